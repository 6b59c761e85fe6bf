// Basic-modal bisimilarity of pointed models (no propositional atoms, so
// only the back-and-forth conditions matter).

#ifndef MEMLOG_BISIM_HPP
#define MEMLOG_BISIM_HPP

#include <utility>
#include <vector>

#include "memlog/model.hpp"

namespace memlog {

using StatePair = std::pair<State, State>;

struct BisimResult {
  bool bisimilar = false;
  // When bisimilar: the largest bisimulation, restricted to pairs whose
  // components are reachable from the respective start states. Sorted.
  std::vector<StatePair> relation;
};

// Greatest fixpoint: start from all pairs and delete pairs that violate
// forth or back until nothing changes.
BisimResult bisimilar(const Model& m1, State s1, const Model& m2, State s2);

// Whether `relation` satisfies back-and-forth between m1 and m2.
bool is_bisimulation(const Model& m1, const Model& m2, const std::vector<StatePair>& relation);

}  // namespace memlog

#endif  // MEMLOG_BISIM_HPP
