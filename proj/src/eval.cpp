#include "memlog/eval.hpp"

#include <algorithm>
#include <unordered_map>

namespace memlog {

namespace {

constexpr std::size_t kDenseMemoLimit = std::size_t{1} << 24;

}  // namespace

std::size_t Evaluator::KeyHash::operator()(const Key& k) const noexcept {
  std::uint64_t h = k.memory * 0x9E3779B97F4A7C15ull;
  h ^= (std::uint64_t{k.node} << 8 | k.state) + 0x632BE59BD9B4E019ull + (h << 6) + (h >> 2);
  return static_cast<std::size_t>(h);
}

Evaluator::Evaluator(const Formula& f, EvalOptions opts) : opts_(opts) {
  // Iterative post-order flattening; children get indices before parents.
  std::unordered_map<const void*, std::uint32_t> index;
  std::unordered_map<const void*, std::size_t> depth_of;
  struct Frame {
    const Formula* f;
    std::size_t depth;
    bool expanded;
  };
  std::vector<Frame> stack{{&f, 0, false}};
  while (!stack.empty()) {
    Frame fr = stack.back();
    stack.pop_back();
    if (fr.depth > opts_.max_depth)
      throw EvalError("formula depth exceeds the evaluation limit of " + std::to_string(opts_.max_depth));
    const void* key = fr.f->node_address();
    if (index.contains(key)) continue;
    const Op op = fr.f->op();
    if (op == Op::Known) {
      index.emplace(key, static_cast<std::uint32_t>(nodes_.size()));
      nodes_.push_back({Op::Known});
      continue;
    }
    if (!fr.expanded) {
      stack.push_back({fr.f, fr.depth, true});
      if (op == Op::And) {
        stack.push_back({&fr.f->right(), fr.depth + 1, false});
        stack.push_back({&fr.f->left(), fr.depth + 1, false});
      } else {
        stack.push_back({&fr.f->child(), fr.depth + 1, false});
      }
      continue;
    }
    Node n{op};
    if (op == Op::And) {
      n.a = index.at(fr.f->left().node_address());
      n.b = index.at(fr.f->right().node_address());
    } else {
      n.a = index.at(fr.f->child().node_address());
    }
    index.emplace(key, static_cast<std::uint32_t>(nodes_.size()));
    nodes_.push_back(n);
  }
  root_ = index.at(f.node_address());
}

void Evaluator::bind(const Model& m) {
  model_ = &m;
  sparse_.clear();
  const std::size_t n = m.state_count();
  dense_ = opts_.memoize && n <= 20 && nodes_.size() * n * (std::size_t{1} << n) <= kDenseMemoLimit;
  if (!dense_) return;
  const std::size_t slots = nodes_.size() * n << n;
  if (stamp_.size() < slots) {
    stamp_.assign(slots, 0);
    value_.assign(slots, 0);
    generation_ = 0;
  }
  if (++generation_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    generation_ = 1;
  }
}

bool Evaluator::eval(const EvalContext& ctx) {
  if (model_ == nullptr) throw EvalError("Evaluator::eval called before bind");
  check_context(*model_, ctx);
  return eval_node(root_, ctx.current, ctx.memory.bits());
}

bool Evaluator::eval_node(std::uint32_t node, State s, std::uint64_t memory) {
  const Node& nd = nodes_[node];
  switch (nd.op) {
    case Op::Known:
      return (memory >> s) & 1u;
    case Op::Neg:
      return !eval_node(nd.a, s, memory);
    case Op::And:
    case Op::Dia:
      break;
  }

  const std::size_t n = model_->state_count();
  std::size_t slot = 0;
  if (opts_.memoize) {
    if (dense_) {
      slot = ((std::size_t{node} * n + s) << n) | memory;
      if (stamp_[slot] == generation_) {
        ++hits_;
        return value_[slot] != 0;
      }
    } else if (auto it = sparse_.find(Key{memory, node, s}); it != sparse_.end()) {
      ++hits_;
      return it->second;
    }
  }

  bool v = false;
  if (nd.op == Op::And) {
    v = eval_node(nd.a, s, memory) && eval_node(nd.b, s, memory);
  } else {
    const std::uint64_t next_memory = memory | (std::uint64_t{1} << s);
    for (std::uint64_t succ = model_->successors(s).bits(); succ != 0 && !v; succ &= succ - 1)
      v = eval_node(nd.a, static_cast<State>(std::countr_zero(succ)), next_memory);
  }

  if (opts_.memoize) {
    if (dense_) {
      stamp_[slot] = generation_;
      value_[slot] = v ? 1 : 0;
    } else {
      sparse_.emplace(Key{memory, node, s}, v);
    }
  }
  return v;
}

bool eval(const Model& m, const EvalContext& ctx, const Formula& f, EvalOptions opts) {
  Evaluator ev(f, opts);
  return ev(m, ctx);
}

namespace {

bool naive(const Model& m, StateSet memory, State s, const Formula& f) {
  switch (f.op()) {
    case Op::Known:
      return memory.contains(s);
    case Op::Neg:
      return !naive(m, memory, s, f.child());
    case Op::And:
      return naive(m, memory, s, f.left()) && naive(m, memory, s, f.right());
    case Op::Dia: {
      const StateSet extended = memory.with(s);
      for (State t = 0; t < m.state_count(); ++t)
        if (m.has_edge(s, t) && naive(m, extended, t, f.child())) return true;
      return false;
    }
  }
  return false;
}

}  // namespace

bool eval_naive(const Model& m, const EvalContext& ctx, const Formula& f) {
  check_context(m, ctx);
  return naive(m, ctx.memory, ctx.current, f);
}

bool memory_free(const Formula& f) {
  switch (f.op()) {
    case Op::Known:
      return false;
    case Op::Neg:
    case Op::Dia:
      return memory_free(f.child());
    case Op::And:
      return memory_free(f.left()) && memory_free(f.right());
  }
  return true;
}

void check_context(const Model& m, const EvalContext& ctx) {
  if (!m.valid_state(ctx.current))
    throw ModelError("current state " + std::to_string(ctx.current) + " out of range");
  const std::uint64_t allowed =
      m.state_count() >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m.state_count()) - 1;
  if ((ctx.memory.bits() & ~allowed) != 0) throw ModelError("memory mentions a state outside the model");
}

}  // namespace memlog
