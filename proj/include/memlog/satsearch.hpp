// Exhaustive bounded-model satisfiability: look for a pointed model with at
// most n states satisfying a formula from empty memory.
//
// Models on n states are identified with their adjacency code, an n*n-bit
// integer whose bit (i*n + j) is set iff there is an edge i -> j. Search
// order is (n, code, start state) ascending, so the first witness is the
// lexicographically least one regardless of sharding or pruning.

#ifndef MEMLOG_SATSEARCH_HPP
#define MEMLOG_SATSEARCH_HPP

#include <chrono>
#include <cstdint>
#include <functional>
#include <iterator>
#include <optional>
#include <variant>
#include <vector>

#include "memlog/formula.hpp"
#include "memlog/model.hpp"

namespace memlog {

// n*n must fit in a 64-bit code.
inline constexpr State kMaxEnumerationStates = 7;

std::uint64_t adjacency_code(const Model& m);
Model model_from_code(State n, std::uint64_t code);

// Applies a state renaming: edge i->j becomes perm[i]->perm[j].
std::uint64_t permute_code(State n, std::uint64_t code, const std::vector<State>& perm);

// Minimum code over all state permutations.
std::uint64_t canonical_code(State n, std::uint64_t code);

// Whether `code` is the canonical member of its class; if so, also reports
// which start states are redundant because an automorphism maps them to a
// smaller state.
struct CanonicalCheck {
  bool canonical = false;
  StateSet redundant_starts;
};
CanonicalCheck check_canonical(State n, std::uint64_t code);

// Every digraph on n labeled states in ascending code order, or one
// representative (the canonical code) per isomorphism class.
class ModelEnumeration {
 public:
  ModelEnumeration(State n, bool prune_isomorphs);

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Model;
    using difference_type = std::ptrdiff_t;

    Model operator*() const { return model_from_code(owner_->n_, code_); }
    std::uint64_t code() const { return code_; }
    iterator& operator++();
    void operator++(int) { ++*this; }
    friend bool operator==(const iterator& a, const iterator& b) { return a.code_ == b.code_; }

   private:
    friend class ModelEnumeration;
    iterator(const ModelEnumeration* owner, std::uint64_t code) : owner_(owner), code_(code) {}
    void settle();
    const ModelEnumeration* owner_;
    std::uint64_t code_;
  };

  iterator begin() const;
  iterator end() const { return iterator(this, limit_); }

 private:
  State n_;
  bool prune_;
  std::uint64_t limit_;
};

ModelEnumeration enumerate_models(State n, bool prune_isomorphs = false);

struct SearchProgress {
  State bound;
  std::uint64_t models_examined;
};

struct SearchConfig {
  State max_states = 1;
  bool prune_isomorphs = true;
  unsigned parallel_shards = 1;
  std::optional<std::chrono::milliseconds> time_budget;
  // Called from the coordinating thread after each completed bound.
  std::function<void(const SearchProgress&)> progress;
};

struct Found {
  Model model;
  State state = 0;
};

struct NoModelUpTo {
  State bound = 0;
};

struct BudgetExceeded {
  // Largest bound whose search space was fully covered; 0 if none.
  State completed_bound = 0;
};

using Verdict = std::variant<Found, NoModelUpTo, BudgetExceeded>;

struct SearchReport {
  Verdict verdict;
  std::uint64_t models_examined = 0;
  std::chrono::nanoseconds elapsed{0};
};

class SearchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

SearchReport sat_bounded(const Formula& f, const SearchConfig& cfg);

}  // namespace memlog

#endif  // MEMLOG_SATSEARCH_HPP
