#include "memlog/hybrid.hpp"

#include <string_view>
#include <utility>
#include <vector>

namespace memlog {

struct HFormula::Node {
  HOp op;
  std::string name;
  HFormula a{nullptr};
  HFormula b{nullptr};
};

HFormula HFormula::nominal(std::string name) {
  return HFormula(std::make_shared<const Node>(Node{HOp::Nominal, std::move(name)}));
}
HFormula HFormula::neg(HFormula child) {
  return HFormula(std::make_shared<const Node>(Node{HOp::Neg, {}, std::move(child)}));
}
HFormula HFormula::conj(HFormula left, HFormula right) {
  return HFormula(std::make_shared<const Node>(Node{HOp::And, {}, std::move(left), std::move(right)}));
}
HFormula HFormula::dia(HFormula child) {
  return HFormula(std::make_shared<const Node>(Node{HOp::Dia, {}, std::move(child)}));
}
HFormula HFormula::down(std::string name, HFormula child) {
  return HFormula(std::make_shared<const Node>(Node{HOp::Down, std::move(name), std::move(child)}));
}

HOp HFormula::op() const noexcept { return node_->op; }

const std::string& HFormula::name() const {
  if (op() != HOp::Nominal && op() != HOp::Down) throw std::logic_error("HFormula::name on unnamed node");
  return node_->name;
}
const HFormula& HFormula::child() const {
  if (op() != HOp::Neg && op() != HOp::Dia && op() != HOp::Down)
    throw std::logic_error("HFormula::child on non-unary node");
  return node_->a;
}
const HFormula& HFormula::left() const {
  if (op() != HOp::And) throw std::logic_error("HFormula::left on non-conjunction");
  return node_->a;
}
const HFormula& HFormula::right() const {
  if (op() != HOp::And) throw std::logic_error("HFormula::right on non-conjunction");
  return node_->b;
}

bool operator==(const HFormula& a, const HFormula& b) {
  if (a.node_ == b.node_) return true;
  if (a.op() != b.op()) return false;
  switch (a.op()) {
    case HOp::Nominal:
      return a.name() == b.name();
    case HOp::Neg:
    case HOp::Dia:
      return a.child() == b.child();
    case HOp::Down:
      return a.name() == b.name() && a.child() == b.child();
    case HOp::And:
      return a.left() == b.left() && a.right() == b.right();
  }
  return false;
}

HFormula hdisj(HFormula a, HFormula b) {
  return HFormula::neg(HFormula::conj(HFormula::neg(std::move(a)), HFormula::neg(std::move(b))));
}
HFormula himp(HFormula a, HFormula b) {
  return HFormula::neg(HFormula::conj(std::move(a), HFormula::neg(std::move(b))));
}
HFormula hbox(HFormula f) { return HFormula::neg(HFormula::dia(HFormula::neg(std::move(f)))); }

HFormula hbot() {
  const auto x = HFormula::nominal(kBotNominal);
  return HFormula::down(kBotNominal, HFormula::conj(x, HFormula::neg(x)));
}
HFormula htop() { return HFormula::neg(hbot()); }

bool is_hbot(const HFormula& h) {
  if (h.op() != HOp::Down || h.name() != kBotNominal) return false;
  const auto& body = h.child();
  return body.op() == HOp::And && body.left().op() == HOp::Nominal && body.left().name() == kBotNominal &&
         body.right().op() == HOp::Neg && body.right().child().op() == HOp::Nominal &&
         body.right().child().name() == kBotNominal;
}

HFormula hdisj_all(std::span<const HFormula> fs) {
  if (fs.empty()) return hbot();
  HFormula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = hdisj(acc, fs[i]);
  return acc;
}

namespace {

void collect_free(const HFormula& h, std::vector<std::string_view>& bound, std::set<std::string>& out) {
  switch (h.op()) {
    case HOp::Nominal:
      for (auto b : bound)
        if (b == h.name()) return;
      out.insert(h.name());
      return;
    case HOp::Neg:
    case HOp::Dia:
      collect_free(h.child(), bound, out);
      return;
    case HOp::And:
      collect_free(h.left(), bound, out);
      collect_free(h.right(), bound, out);
      return;
    case HOp::Down:
      bound.push_back(h.name());
      collect_free(h.child(), bound, out);
      bound.pop_back();
      return;
  }
}

enum Level { kImp = 0, kOr = 1, kAnd = 2, kUnary = 3 };

void print_at(const HFormula& h, Level ctx, std::string& out) {
  if (is_hbot(h)) {
    out += "false";
    return;
  }
  switch (h.op()) {
    case HOp::Nominal:
      out += h.name();
      return;
    case HOp::Neg:
      if (is_hbot(h.child())) {
        out += "true";
        return;
      }
      out += '~';
      print_at(h.child(), kUnary, out);
      return;
    case HOp::Dia:
      out += "<>";
      print_at(h.child(), kUnary, out);
      return;
    case HOp::Down:
      out += "down ";
      out += h.name();
      out += " . ";
      print_at(h.child(), kUnary, out);
      return;
    case HOp::And: {
      const bool paren = ctx > kAnd;
      if (paren) out += '(';
      print_at(h.left(), kAnd, out);
      out += " & ";
      print_at(h.right(), kUnary, out);
      if (paren) out += ')';
      return;
    }
  }
}

// Binding scope as a stack searched from the top, so inner binders shadow
// outer ones. The global assignment is consulted last.
struct Scope {
  const NominalAssignment& global;
  std::vector<std::pair<std::string_view, State>> frames;

  State lookup(const std::string& name) const {
    for (auto it = frames.rbegin(); it != frames.rend(); ++it)
      if (it->first == name) return it->second;
    if (auto it = global.find(name); it != global.end()) return it->second;
    throw UnboundNominal(name);
  }

  NominalAssignment snapshot() const {
    NominalAssignment g = global;
    for (const auto& [name, s] : frames) g[std::string(name)] = s;
    return g;
  }
};

bool heval_at(const Model& m, Scope& scope, State s, const HFormula& h, const HEvalObserver& observer) {
  if (observer) observer(h, s, scope.snapshot());
  switch (h.op()) {
    case HOp::Nominal:
      return scope.lookup(h.name()) == s;
    case HOp::Neg:
      return !heval_at(m, scope, s, h.child(), observer);
    case HOp::And:
      return heval_at(m, scope, s, h.left(), observer) && heval_at(m, scope, s, h.right(), observer);
    case HOp::Dia:
      for (State t : m.successors(s).states())
        if (heval_at(m, scope, t, h.child(), observer)) return true;
      return false;
    case HOp::Down: {
      scope.frames.emplace_back(h.name(), s);
      const bool v = heval_at(m, scope, s, h.child(), observer);
      scope.frames.pop_back();
      return v;
    }
  }
  return false;
}

}  // namespace

std::set<std::string> free_nominals(const HFormula& h) {
  std::vector<std::string_view> bound;
  std::set<std::string> out;
  collect_free(h, bound, out);
  return out;
}

std::string print_hformula(const HFormula& h) {
  std::string out;
  print_at(h, kImp, out);
  return out;
}

bool heval(const Model& m, const NominalAssignment& g, State s, const HFormula& h, const HEvalObserver& observer) {
  if (!m.valid_state(s)) throw ModelError("evaluation state out of range");
  for (const auto& [name, t] : g)
    if (!m.valid_state(t)) throw ModelError("nominal '" + name + "' assigned to an out-of-range state");
  Scope scope{g, {}};
  return heval_at(m, scope, s, h, observer);
}

}  // namespace memlog
