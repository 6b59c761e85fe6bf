// Formulas of the memory logic with remember-and-move diamond and the
// "known" constant.
//
// The core language has exactly four constructors: k, ~f, f & g and <>f.
// Every other connective (|, ->, [], true, false) is a construction helper
// that expands into these.

#ifndef MEMLOG_FORMULA_HPP
#define MEMLOG_FORMULA_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace memlog {

enum class Op : std::uint8_t { Known, Neg, And, Dia };

// Immutable, shared formula tree. Each node carries an id unique to the
// node object, so evaluators can memoize per subformula. Equality is
// structural.
class Formula {
 public:
  static Formula known();
  static Formula neg(Formula child);
  static Formula conj(Formula left, Formula right);
  static Formula dia(Formula child);

  Op op() const noexcept;
  std::uint64_t id() const noexcept;

  // Pre: op() is Neg or Dia.
  const Formula& child() const;
  // Pre: op() is And.
  const Formula& left() const;
  const Formula& right() const;

  // Same node object (not just the same shape).
  bool same_node(const Formula& other) const noexcept { return node_ == other.node_; }
  const void* node_address() const noexcept { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Core constructors as free functions.
Formula known();
Formula neg(Formula f);
Formula conj(Formula a, Formula b);
Formula dia(Formula f);

// Derived connectives.
Formula disj(Formula a, Formula b);   // ~(~a & ~b)
Formula imp(Formula a, Formula b);    // ~(a & ~b)
Formula box(Formula f);               // ~<>~f
Formula bot();                        // k & ~k
Formula top();                        // k | ~k

// Left-nested folds. Empty conjunction is top(), empty disjunction bot().
Formula conj_all(std::span<const Formula> fs);
Formula disj_all(std::span<const Formula> fs);

// n diamonds applied to f.
Formula dia_n(std::size_t n, Formula f);

std::size_t depth(const Formula& f);
std::size_t size(const Formula& f);
std::size_t connective_count(const Formula& f);

// Precedence-minimal concrete syntax, using only k ~ & <> and parentheses.
std::string print_formula(const Formula& f);

// Negation normal form. Negation only sits on k; box and disjunction are
// explicit node kinds here.
enum class NnfOp : std::uint8_t { Known, NotKnown, And, Or, Dia, Box };

class Nnf {
 public:
  static Nnf known();
  static Nnf not_known();
  static Nnf conj(Nnf l, Nnf r);
  static Nnf disj(Nnf l, Nnf r);
  static Nnf dia(Nnf c);
  static Nnf box(Nnf c);

  NnfOp op() const noexcept;
  const Nnf& child() const;
  const Nnf& left() const;
  const Nnf& right() const;

  friend bool operator==(const Nnf& a, const Nnf& b);

 private:
  struct Node;
  explicit Nnf(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Nnf nnf(const Formula& f);
// Expands Or/Box/NotKnown back into the four core constructors.
Formula to_core(const Nnf& n);
// Uses | and [] for the dual connectives; parses back to to_core(n).
std::string print_nnf(const Nnf& n);

}  // namespace memlog

#endif  // MEMLOG_FORMULA_HPP
