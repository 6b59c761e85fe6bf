// Remember-and-move semantics.
//
//   M,S,s |= k      iff  s in S
//   M,S,s |= ~f     iff  not M,S,s |= f
//   M,S,s |= f & g  iff  both hold
//   M,S,s |= <>f    iff  some t with R(s,t) has M, S u {s}, t |= f
//
// The diamond stores the *current* state before moving.

#ifndef MEMLOG_EVAL_HPP
#define MEMLOG_EVAL_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "memlog/formula.hpp"
#include "memlog/model.hpp"

namespace memlog {

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Evaluation recurses once per nesting level; this keeps it well inside a
// default 8 MiB thread stack.
inline constexpr std::size_t kMaxEvalDepth = 20000;

struct EvalOptions {
  bool memoize = true;
  // Formulas deeper than this are rejected before evaluation starts.
  std::size_t max_depth = kMaxEvalDepth;
};

// Memoizing evaluator for one formula. The formula is flattened once into a
// DAG (shared subtrees become one entry); the memo is keyed by
// (subformula, current state, memory) and is dropped whenever a different
// model is bound.
//
// Not thread-safe; use one Evaluator per thread.
class Evaluator {
 public:
  explicit Evaluator(const Formula& f, EvalOptions opts = {});

  // Clears the memo. The model must outlive subsequent eval() calls.
  void bind(const Model& m);
  bool eval(const EvalContext& ctx);

  // Convenience: bind then eval.
  bool operator()(const Model& m, const EvalContext& ctx) {
    bind(m);
    return eval(ctx);
  }

  std::size_t node_count() const { return nodes_.size(); }
  std::uint64_t memo_hits() const { return hits_; }

 private:
  struct Node {
    Op op;
    std::uint32_t a = 0;
    std::uint32_t b = 0;
  };

  bool eval_node(std::uint32_t node, State s, std::uint64_t memory);

  std::vector<Node> nodes_;
  std::uint32_t root_ = 0;
  EvalOptions opts_;
  const Model* model_ = nullptr;

  // Dense memo for small models: slot = (node * n + state) << n | memory.
  // A slot is valid when its stamp equals the current generation.
  bool dense_ = false;
  std::uint32_t generation_ = 0;
  std::vector<std::uint32_t> stamp_;
  std::vector<std::uint8_t> value_;
  struct Key {
    std::uint64_t memory;
    std::uint32_t node;
    std::uint32_t state;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };
  std::unordered_map<Key, bool, KeyHash> sparse_;
  std::uint64_t hits_ = 0;
};

// Memoized evaluation.
bool eval(const Model& m, const EvalContext& ctx, const Formula& f, EvalOptions opts = {});

// Independent oracle: plain structural recursion, no memo, no flattening.
bool eval_naive(const Model& m, const EvalContext& ctx, const Formula& f);

// True iff k does not occur in f. Every core formula has k as its only
// atom, so this is false for any formula built from the four constructors.
bool memory_free(const Formula& f);

// Throws ModelError if ctx is not valid for m.
void check_context(const Model& m, const EvalContext& ctx);

}  // namespace memlog

#endif  // MEMLOG_EVAL_HPP
