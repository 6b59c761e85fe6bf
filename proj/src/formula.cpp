#include "memlog/formula.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <utility>

namespace memlog {

namespace {

std::uint64_t next_id() {
  static std::atomic<std::uint64_t> counter{0};
  return counter.fetch_add(1, std::memory_order_relaxed);
}

}  // namespace

struct Formula::Node {
  Op op;
  std::uint64_t id;
  // Neg/Dia use `a`; And uses both. Empty for Known.
  mutable Formula a{nullptr};
  mutable Formula b{nullptr};

  // Long chains would otherwise be released recursively.
  ~Node() {
    std::vector<std::shared_ptr<const Node>> pending;
    auto take = [&](Formula& f) {
      if (f.node_) pending.push_back(std::move(f.node_));
    };
    take(a);
    take(b);
    while (!pending.empty()) {
      std::shared_ptr<const Node> n = std::move(pending.back());
      pending.pop_back();
      if (n.use_count() == 1) {
        take(n->a);
        take(n->b);
      }
    }
  }
};

Formula Formula::known() {
  static const auto node = std::make_shared<const Node>(Node{Op::Known, next_id()});
  return Formula(node);
}

Formula Formula::neg(Formula child) {
  return Formula(std::make_shared<const Node>(Node{Op::Neg, next_id(), std::move(child)}));
}

Formula Formula::conj(Formula left, Formula right) {
  return Formula(std::make_shared<const Node>(Node{Op::And, next_id(), std::move(left), std::move(right)}));
}

Formula Formula::dia(Formula child) {
  return Formula(std::make_shared<const Node>(Node{Op::Dia, next_id(), std::move(child)}));
}

Op Formula::op() const noexcept { return node_->op; }
std::uint64_t Formula::id() const noexcept { return node_->id; }

const Formula& Formula::child() const {
  if (op() != Op::Neg && op() != Op::Dia) throw std::logic_error("Formula::child on non-unary node");
  return node_->a;
}

const Formula& Formula::left() const {
  if (op() != Op::And) throw std::logic_error("Formula::left on non-conjunction");
  return node_->a;
}

const Formula& Formula::right() const {
  if (op() != Op::And) throw std::logic_error("Formula::right on non-conjunction");
  return node_->b;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.op() != b.op()) return false;
  switch (a.op()) {
    case Op::Known:
      return true;
    case Op::Neg:
    case Op::Dia:
      return a.child() == b.child();
    case Op::And:
      return a.left() == b.left() && a.right() == b.right();
  }
  return false;
}

Formula known() { return Formula::known(); }
Formula neg(Formula f) { return Formula::neg(std::move(f)); }
Formula conj(Formula a, Formula b) { return Formula::conj(std::move(a), std::move(b)); }
Formula dia(Formula f) { return Formula::dia(std::move(f)); }

Formula disj(Formula a, Formula b) { return neg(conj(neg(std::move(a)), neg(std::move(b)))); }
Formula imp(Formula a, Formula b) { return neg(conj(std::move(a), neg(std::move(b)))); }
Formula box(Formula f) { return neg(dia(neg(std::move(f)))); }
Formula bot() { return conj(known(), neg(known())); }
Formula top() { return disj(known(), neg(known())); }

Formula conj_all(std::span<const Formula> fs) {
  if (fs.empty()) return top();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = conj(acc, fs[i]);
  return acc;
}

Formula disj_all(std::span<const Formula> fs) {
  if (fs.empty()) return bot();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = disj(acc, fs[i]);
  return acc;
}

Formula dia_n(std::size_t n, Formula f) {
  for (std::size_t i = 0; i < n; ++i) f = dia(std::move(f));
  return f;
}

std::size_t depth(const Formula& f) {
  // Iterative so that arbitrarily deep inputs can be measured safely.
  std::size_t best = 0;
  std::vector<std::pair<const Formula*, std::size_t>> todo{{&f, 0}};
  while (!todo.empty()) {
    auto [g, d] = todo.back();
    todo.pop_back();
    best = std::max(best, d);
    switch (g->op()) {
      case Op::Known: break;
      case Op::Neg:
      case Op::Dia: todo.emplace_back(&g->child(), d + 1); break;
      case Op::And:
        todo.emplace_back(&g->left(), d + 1);
        todo.emplace_back(&g->right(), d + 1);
        break;
    }
  }
  return best;
}

std::size_t size(const Formula& f) {
  switch (f.op()) {
    case Op::Known:
      return 1;
    case Op::Neg:
    case Op::Dia:
      return 1 + size(f.child());
    case Op::And:
      return 1 + size(f.left()) + size(f.right());
  }
  return 0;
}

std::size_t connective_count(const Formula& f) {
  switch (f.op()) {
    case Op::Known:
      return 0;
    case Op::Neg:
    case Op::Dia:
      return 1 + connective_count(f.child());
    case Op::And:
      return 1 + connective_count(f.left()) + connective_count(f.right());
  }
  return 0;
}

// Printing ------------------------------------------------------------------

namespace {

// Binding strength, loosest first. Mirrors the grammar levels.
enum Level { kImp = 0, kOr = 1, kAnd = 2, kUnary = 3 };

void print_core(const Formula& f, Level ctx, std::string& out) {
  switch (f.op()) {
    case Op::Known:
      out += 'k';
      return;
    case Op::Neg:
      out += '~';
      print_core(f.child(), kUnary, out);
      return;
    case Op::Dia:
      out += "<>";
      print_core(f.child(), kUnary, out);
      return;
    case Op::And: {
      const bool paren = ctx > kAnd;
      if (paren) out += '(';
      print_core(f.left(), kAnd, out);
      out += " & ";
      print_core(f.right(), kUnary, out);
      if (paren) out += ')';
      return;
    }
  }
}

}  // namespace

std::string print_formula(const Formula& f) {
  std::string out;
  print_core(f, kImp, out);
  return out;
}

// NNF -----------------------------------------------------------------------

struct Nnf::Node {
  NnfOp op;
  Nnf a{nullptr};
  Nnf b{nullptr};
};

Nnf Nnf::known() {
  static const auto node = std::make_shared<const Node>(Node{NnfOp::Known});
  return Nnf(node);
}
Nnf Nnf::not_known() {
  static const auto node = std::make_shared<const Node>(Node{NnfOp::NotKnown});
  return Nnf(node);
}
Nnf Nnf::conj(Nnf l, Nnf r) { return Nnf(std::make_shared<const Node>(Node{NnfOp::And, std::move(l), std::move(r)})); }
Nnf Nnf::disj(Nnf l, Nnf r) { return Nnf(std::make_shared<const Node>(Node{NnfOp::Or, std::move(l), std::move(r)})); }
Nnf Nnf::dia(Nnf c) { return Nnf(std::make_shared<const Node>(Node{NnfOp::Dia, std::move(c)})); }
Nnf Nnf::box(Nnf c) { return Nnf(std::make_shared<const Node>(Node{NnfOp::Box, std::move(c)})); }

NnfOp Nnf::op() const noexcept { return node_->op; }

const Nnf& Nnf::child() const {
  if (op() != NnfOp::Dia && op() != NnfOp::Box) throw std::logic_error("Nnf::child on non-modal node");
  return node_->a;
}
const Nnf& Nnf::left() const {
  if (op() != NnfOp::And && op() != NnfOp::Or) throw std::logic_error("Nnf::left on non-binary node");
  return node_->a;
}
const Nnf& Nnf::right() const {
  if (op() != NnfOp::And && op() != NnfOp::Or) throw std::logic_error("Nnf::right on non-binary node");
  return node_->b;
}

bool operator==(const Nnf& a, const Nnf& b) {
  if (a.node_ == b.node_) return true;
  if (a.op() != b.op()) return false;
  switch (a.op()) {
    case NnfOp::Known:
    case NnfOp::NotKnown:
      return true;
    case NnfOp::Dia:
    case NnfOp::Box:
      return a.child() == b.child();
    case NnfOp::And:
    case NnfOp::Or:
      return a.left() == b.left() && a.right() == b.right();
  }
  return false;
}

namespace {

Nnf nnf_polar(const Formula& f, bool positive) {
  switch (f.op()) {
    case Op::Known:
      return positive ? Nnf::known() : Nnf::not_known();
    case Op::Neg:
      return nnf_polar(f.child(), !positive);
    case Op::And: {
      Nnf l = nnf_polar(f.left(), positive);
      Nnf r = nnf_polar(f.right(), positive);
      return positive ? Nnf::conj(std::move(l), std::move(r)) : Nnf::disj(std::move(l), std::move(r));
    }
    case Op::Dia: {
      Nnf c = nnf_polar(f.child(), positive);
      return positive ? Nnf::dia(std::move(c)) : Nnf::box(std::move(c));
    }
  }
  throw std::logic_error("unreachable");
}

void print_nnf_at(const Nnf& n, Level ctx, std::string& out) {
  switch (n.op()) {
    case NnfOp::Known:
      out += 'k';
      return;
    case NnfOp::NotKnown:
      out += "~k";
      return;
    case NnfOp::Dia:
      out += "<>";
      print_nnf_at(n.child(), kUnary, out);
      return;
    case NnfOp::Box:
      out += "[]";
      print_nnf_at(n.child(), kUnary, out);
      return;
    case NnfOp::And: {
      const bool paren = ctx > kAnd;
      if (paren) out += '(';
      print_nnf_at(n.left(), kAnd, out);
      out += " & ";
      print_nnf_at(n.right(), kUnary, out);
      if (paren) out += ')';
      return;
    }
    case NnfOp::Or: {
      const bool paren = ctx > kOr;
      if (paren) out += '(';
      print_nnf_at(n.left(), kOr, out);
      out += " | ";
      print_nnf_at(n.right(), kAnd, out);
      if (paren) out += ')';
      return;
    }
  }
}

}  // namespace

Nnf nnf(const Formula& f) { return nnf_polar(f, true); }

Formula to_core(const Nnf& n) {
  switch (n.op()) {
    case NnfOp::Known:
      return known();
    case NnfOp::NotKnown:
      return neg(known());
    case NnfOp::And:
      return conj(to_core(n.left()), to_core(n.right()));
    case NnfOp::Or:
      return disj(to_core(n.left()), to_core(n.right()));
    case NnfOp::Dia:
      return dia(to_core(n.child()));
    case NnfOp::Box:
      return box(to_core(n.child()));
  }
  throw std::logic_error("unreachable");
}

std::string print_nnf(const Nnf& n) {
  std::string out;
  print_nnf_at(n, kImp, out);
  return out;
}

}  // namespace memlog
