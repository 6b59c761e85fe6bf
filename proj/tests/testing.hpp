// Test-only generators and oracles. Nothing here calls into the search or
// enumeration code it is used to check.

#ifndef MEMLOG_TESTS_TESTING_HPP
#define MEMLOG_TESTS_TESTING_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "memlog/formula.hpp"
#include "memlog/model.hpp"

namespace memlog::testing {

inline std::string source_path(const std::string& rel) { return std::string(MEMLOG_SOURCE_DIR) + "/" + rel; }

inline Model two_cycle() { return Model(2, {{0, 1}, {1, 0}}); }
inline Model reflexive_singleton() { return Model(1, {{0, 0}}); }
inline Model dead_end_singleton() { return Model(1); }

// Random core formula of depth at most max_depth. Leaves get likelier as
// depth is used up, which keeps sizes moderate.
inline Formula random_formula(std::mt19937_64& rng, int max_depth) {
  std::uniform_int_distribution<int> pick(0, 9);
  if (max_depth == 0 || pick(rng) < 2) return known();
  switch (pick(rng) % 3) {
    case 0: return neg(random_formula(rng, max_depth - 1));
    case 1: return dia(random_formula(rng, max_depth - 1));
    default: {
      Formula l = random_formula(rng, max_depth - 1);
      return conj(std::move(l), random_formula(rng, max_depth - 1));
    }
  }
}

// Every core formula with exactly c connectives.
inline std::vector<Formula> formulas_with(std::size_t c) {
  if (c == 0) return {known()};
  std::vector<Formula> out;
  for (const auto& f : formulas_with(c - 1)) {
    out.push_back(neg(f));
    out.push_back(dia(f));
  }
  for (std::size_t lc = 0; lc + 1 <= c; ++lc) {
    const auto lefts = formulas_with(lc);
    const auto rights = formulas_with(c - 1 - lc);
    for (const auto& l : lefts)
      for (const auto& r : rights) out.push_back(conj(l, r));
  }
  return out;
}

inline std::vector<Formula> formulas_up_to(std::size_t c) {
  std::vector<Formula> out;
  for (std::size_t i = 0; i <= c; ++i) {
    auto layer = formulas_with(i);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

// All digraphs on n states, built edge by edge from a counter.
inline std::vector<Model> all_models(State n) {
  std::vector<Model> out;
  const std::uint64_t total = std::uint64_t{1} << (n * n);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    Model m(n);
    for (State i = 0; i < n; ++i)
      for (State j = 0; j < n; ++j)
        if ((mask >> (i * n + j)) & 1u) m.add_edge(i, j);
    out.push_back(std::move(m));
  }
  return out;
}

inline std::vector<Model> all_models_up_to(State n) {
  std::vector<Model> out;
  for (State i = 1; i <= n; ++i) {
    auto layer = all_models(i);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

inline std::vector<EvalContext> all_contexts(const Model& m) {
  std::vector<EvalContext> out;
  const std::uint64_t subsets = std::uint64_t{1} << m.state_count();
  for (std::uint64_t mem = 0; mem < subsets; ++mem)
    for (State s = 0; s < m.state_count(); ++s) out.push_back({StateSet(mem), s});
  return out;
}

// Basic modal formulas with a constant-true leaf. Used where a k-free
// formula is needed: the core language has k as its only atom.
struct Basic {
  enum class Kind { True, Neg, And, Dia } kind;
  std::shared_ptr<const Basic> a, b;
};
using BasicPtr = std::shared_ptr<const Basic>;

inline BasicPtr random_basic(std::mt19937_64& rng, int max_depth) {
  std::uniform_int_distribution<int> pick(0, 9);
  if (max_depth == 0 || pick(rng) < 2) return std::make_shared<const Basic>(Basic{Basic::Kind::True, {}, {}});
  switch (pick(rng) % 3) {
    case 0: return std::make_shared<const Basic>(Basic{Basic::Kind::Neg, random_basic(rng, max_depth - 1), {}});
    case 1: return std::make_shared<const Basic>(Basic{Basic::Kind::Dia, random_basic(rng, max_depth - 1), {}});
    default:
      return std::make_shared<const Basic>(
          Basic{Basic::Kind::And, random_basic(rng, max_depth - 1), random_basic(rng, max_depth - 1)});
  }
}

// Plain Kripke semantics; there is no memory to consult.
inline bool eval_basic(const Model& m, State s, const Basic& f) {
  switch (f.kind) {
    case Basic::Kind::True: return true;
    case Basic::Kind::Neg: return !eval_basic(m, s, *f.a);
    case Basic::Kind::And: return eval_basic(m, s, *f.a) && eval_basic(m, s, *f.b);
    case Basic::Kind::Dia:
      for (State t = 0; t < m.state_count(); ++t)
        if (m.has_edge(s, t) && eval_basic(m, t, *f.a)) return true;
      return false;
  }
  return false;
}

// Counts occurrences of subterms structurally equal to `needle`.
inline std::size_t count_subterms(const Formula& f, const Formula& needle) {
  std::size_t n = f == needle ? 1 : 0;
  switch (f.op()) {
    case Op::Known: break;
    case Op::Neg:
    case Op::Dia: n += count_subterms(f.child(), needle); break;
    case Op::And: n += count_subterms(f.left(), needle) + count_subterms(f.right(), needle); break;
  }
  return n;
}

inline void for_each_subterm(const Formula& f, const std::function<void(const Formula&)>& visit) {
  visit(f);
  switch (f.op()) {
    case Op::Known: break;
    case Op::Neg:
    case Op::Dia: for_each_subterm(f.child(), visit); break;
    case Op::And:
      for_each_subterm(f.left(), visit);
      for_each_subterm(f.right(), visit);
      break;
  }
}

// Leaves of the top-level conjunction spine.
inline void flatten_conj(const Formula& f, std::vector<Formula>& out) {
  if (f.op() == Op::And) {
    flatten_conj(f.left(), out);
    flatten_conj(f.right(), out);
  } else {
    out.push_back(f);
  }
}

}  // namespace memlog::testing

#endif  // MEMLOG_TESTS_TESTING_HPP
