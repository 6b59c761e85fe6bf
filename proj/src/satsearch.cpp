#include "memlog/satsearch.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <numeric>
#include <thread>

#include "memlog/eval.hpp"

namespace memlog {

namespace {

std::uint64_t code_limit(State n) {
  if (n == 0 || n > kMaxEnumerationStates)
    throw SearchError("enumeration supports 1.." + std::to_string(kMaxEnumerationStates) + " states");
  return std::uint64_t{1} << (n * n);
}

}  // namespace

std::uint64_t adjacency_code(const Model& m) {
  const State n = m.state_count();
  code_limit(n);
  std::uint64_t code = 0;
  for (auto [from, to] : m.edges()) code |= std::uint64_t{1} << (from * n + to);
  return code;
}

Model model_from_code(State n, std::uint64_t code) {
  Model m(n);
  for (std::uint64_t bits = code; bits != 0; bits &= bits - 1) {
    const auto bit = static_cast<State>(std::countr_zero(bits));
    m.add_edge(bit / n, bit % n);
  }
  return m;
}

std::uint64_t permute_code(State n, std::uint64_t code, const std::vector<State>& perm) {
  std::uint64_t out = 0;
  for (std::uint64_t bits = code; bits != 0; bits &= bits - 1) {
    const auto bit = static_cast<State>(std::countr_zero(bits));
    out |= std::uint64_t{1} << (perm[bit / n] * n + perm[bit % n]);
  }
  return out;
}

std::uint64_t canonical_code(State n, std::uint64_t code) {
  std::vector<State> perm(n);
  std::iota(perm.begin(), perm.end(), State{0});
  std::uint64_t best = code;
  do {
    best = std::min(best, permute_code(n, code, perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

CanonicalCheck check_canonical(State n, std::uint64_t code) {
  std::vector<State> perm(n);
  std::iota(perm.begin(), perm.end(), State{0});
  CanonicalCheck out{true, {}};
  do {
    const std::uint64_t image = permute_code(n, code, perm);
    if (image < code) return {false, {}};
    if (image == code)
      for (State s = 0; s < n; ++s)
        if (perm[s] < s) out.redundant_starts.insert(s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

ModelEnumeration::ModelEnumeration(State n, bool prune_isomorphs)
    : n_(n), prune_(prune_isomorphs), limit_(code_limit(n)) {}

void ModelEnumeration::iterator::settle() {
  if (!owner_->prune_) return;
  while (code_ < owner_->limit_ && canonical_code(owner_->n_, code_) != code_) ++code_;
}

ModelEnumeration::iterator& ModelEnumeration::iterator::operator++() {
  ++code_;
  settle();
  return *this;
}

ModelEnumeration::iterator ModelEnumeration::begin() const {
  iterator it(this, 0);
  it.settle();
  return it;
}

ModelEnumeration enumerate_models(State n, bool prune_isomorphs) { return ModelEnumeration(n, prune_isomorphs); }

namespace {

constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();

struct ShardResult {
  std::uint64_t begin = 0;
  std::uint64_t end = 0;
  std::uint64_t scanned_until = 0;  // first code not yet examined
  std::uint64_t found_code = kNone;
  State found_state = 0;
  std::uint64_t examined = 0;
};

using Clock = std::chrono::steady_clock;

struct SharedState {
  std::atomic<std::uint64_t> best_code{kNone};
  std::atomic<bool> out_of_time{false};
  std::optional<Clock::time_point> deadline;
};

void run_shard(const Formula& f, State n, bool prune, ShardResult& r, SharedState& shared) {
  Evaluator ev(f);
  r.scanned_until = r.begin;
  for (std::uint64_t code = r.begin; code < r.end; ++code) {
    if (code > shared.best_code.load(std::memory_order_relaxed)) break;
    if (shared.deadline && (code & 0xFF) == 0 && Clock::now() > *shared.deadline) {
      shared.out_of_time.store(true);
      return;
    }
    if (shared.out_of_time.load(std::memory_order_relaxed)) return;

    StateSet skip;
    if (prune) {
      const CanonicalCheck c = check_canonical(n, code);
      if (!c.canonical) {
        r.scanned_until = code + 1;
        continue;
      }
      skip = c.redundant_starts;
    }
    const Model m = model_from_code(n, code);
    ev.bind(m);
    ++r.examined;
    for (State s = 0; s < n; ++s) {
      if (skip.contains(s)) continue;
      if (ev.eval(EvalContext{StateSet{}, s})) {
        r.found_code = code;
        r.found_state = s;
        r.scanned_until = code + 1;
        std::uint64_t prev = shared.best_code.load();
        while (code < prev && !shared.best_code.compare_exchange_weak(prev, code)) {
        }
        return;
      }
    }
    r.scanned_until = code + 1;
  }
  r.scanned_until = std::max(r.scanned_until, std::min(r.end, shared.best_code.load()));
}

}  // namespace

SearchReport sat_bounded(const Formula& f, const SearchConfig& cfg) {
  if (cfg.max_states < 1) throw SearchError("max_states must be at least 1");
  if (cfg.max_states > kMaxEnumerationStates)
    throw SearchError("max_states is limited to " + std::to_string(kMaxEnumerationStates));
  if (cfg.parallel_shards < 1) throw SearchError("parallel_shards must be at least 1");

  const auto started = Clock::now();
  SearchReport report{NoModelUpTo{cfg.max_states}};
  // Reject over-deep formulas before spawning threads.
  Evaluator probe(f);
  (void)probe;

  for (State n = 1; n <= cfg.max_states; ++n) {
    const std::uint64_t limit = std::uint64_t{1} << (n * n);
    const std::uint64_t shards = std::min<std::uint64_t>(cfg.parallel_shards, limit);
    std::vector<ShardResult> results(shards);
    for (std::uint64_t i = 0; i < shards; ++i) {
      results[i].begin = limit / shards * i;
      results[i].end = i + 1 == shards ? limit : limit / shards * (i + 1);
    }
    SharedState shared;
    if (cfg.time_budget) shared.deadline = started + *cfg.time_budget;

    if (shards == 1) {
      run_shard(f, n, cfg.prune_isomorphs, results[0], shared);
    } else {
      std::vector<std::jthread> workers;
      workers.reserve(shards);
      for (auto& r : results)
        workers.emplace_back([&f, n, &cfg, &r, &shared] { run_shard(f, n, cfg.prune_isomorphs, r, shared); });
    }

    std::optional<std::pair<std::uint64_t, State>> best;
    for (const auto& r : results) {
      report.models_examined += r.examined;
      if (r.found_code != kNone && (!best || r.found_code < best->first)) best = {r.found_code, r.found_state};
    }

    // A witness is only the least one if everything below it was examined.
    bool covered = true;
    const std::uint64_t upto = best ? best->first : limit;
    for (const auto& r : results)
      if (r.begin < upto && r.scanned_until < std::min(r.end, upto)) covered = false;

    if (best && covered) {
      Model m = model_from_code(n, best->first);
      if (!eval_naive(m, EvalContext{StateSet{}, best->second}, f))
        throw std::logic_error("witness rejected by the reference evaluator");
      report.verdict = Found{std::move(m), best->second};
      break;
    }
    if (!covered) {
      report.verdict = BudgetExceeded{static_cast<State>(n - 1)};
      break;
    }
    if (cfg.progress) cfg.progress(SearchProgress{n, report.models_examined});
  }

  report.elapsed = Clock::now() - started;
  return report;
}

}  // namespace memlog
