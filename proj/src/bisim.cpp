#include "memlog/bisim.hpp"

namespace memlog {

namespace {

StateSet reachable(const Model& m, State from) {
  StateSet seen = StateSet{}.with(from);
  std::vector<State> todo{from};
  while (!todo.empty()) {
    const State s = todo.back();
    todo.pop_back();
    for (State t : m.successors(s).states()) {
      if (!seen.contains(t)) {
        seen.insert(t);
        todo.push_back(t);
      }
    }
  }
  return seen;
}

// rel[a] is the set of m2-states related to a.
bool forth(const Model& m1, const Model& m2, const std::vector<StateSet>& rel, State a, State b) {
  for (State a2 : m1.successors(a).states())
    if ((m2.successors(b).bits() & rel[a2].bits()) == 0) return false;
  return true;
}

bool back(const Model& m1, const Model& m2, const std::vector<StateSet>& rel, State a, State b) {
  for (State b2 : m2.successors(b).states()) {
    bool matched = false;
    for (State a2 : m1.successors(a).states()) {
      if (rel[a2].contains(b2)) {
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

}  // namespace

BisimResult bisimilar(const Model& m1, State s1, const Model& m2, State s2) {
  if (!m1.valid_state(s1) || !m2.valid_state(s2)) throw ModelError("bisimulation start state out of range");
  const std::uint64_t all2 =
      m2.state_count() >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m2.state_count()) - 1;
  std::vector<StateSet> rel(m1.state_count(), StateSet(all2));

  for (bool changed = true; changed;) {
    changed = false;
    for (State a = 0; a < m1.state_count(); ++a) {
      for (State b : rel[a].states()) {
        if (!forth(m1, m2, rel, a, b) || !back(m1, m2, rel, a, b)) {
          rel[a] = StateSet(rel[a].bits() & ~(std::uint64_t{1} << b));
          changed = true;
        }
      }
    }
  }

  BisimResult out;
  out.bisimilar = rel[s1].contains(s2);
  if (!out.bisimilar) return out;
  const StateSet r1 = reachable(m1, s1), r2 = reachable(m2, s2);
  for (State a : r1.states())
    for (State b : rel[a].states())
      if (r2.contains(b)) out.relation.emplace_back(a, b);
  return out;
}

bool is_bisimulation(const Model& m1, const Model& m2, const std::vector<StatePair>& relation) {
  std::vector<StateSet> rel(m1.state_count());
  for (auto [a, b] : relation) {
    if (!m1.valid_state(a) || !m2.valid_state(b)) return false;
    rel[a].insert(b);
  }
  for (auto [a, b] : relation)
    if (!forth(m1, m2, rel, a, b) || !back(m1, m2, rel, a, b)) return false;
  return true;
}

}  // namespace memlog
