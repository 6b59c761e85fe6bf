#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "memlog/eval.hpp"
#include "memlog/parser.hpp"
#include "memlog/satsearch.hpp"
#include "testing.hpp"

using namespace memlog;

namespace {

// Orbit oracle: relabel every model under every permutation and count
// connected classes, without using the canonical-form code.
std::size_t count_isomorphism_classes(State n) {
  const auto models = testing::all_models(n);
  std::map<std::vector<std::pair<State, State>>, std::size_t> index;
  for (std::size_t i = 0; i < models.size(); ++i) index[models[i].edges()] = i;
  std::vector<std::size_t> parent(models.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<State> perm(n);
  std::iota(perm.begin(), perm.end(), State{0});
  do {
    for (std::size_t i = 0; i < models.size(); ++i) {
      Model image(n);
      for (auto [a, b] : models[i].edges()) image.add_edge(perm[a], perm[b]);
      auto edges = image.edges();
      parent[find(i)] = find(index.at(edges));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::set<std::size_t> roots;
  for (std::size_t i = 0; i < models.size(); ++i) roots.insert(find(i));
  return roots.size();
}

std::size_t count(const ModelEnumeration& e) {
  std::size_t c = 0;
  for (auto it = e.begin(); it != e.end(); ++it) ++c;
  return c;
}

}  // namespace

TEST_CASE("adjacency codes") {
  const Model m(2, {{0, 1}, {1, 1}});
  CHECK(adjacency_code(m) == 0b1010);
  CHECK(model_from_code(2, 0b1010) == m);
  for (std::uint64_t code = 0; code < 512; ++code) REQUIRE(adjacency_code(model_from_code(3, code)) == code);
}

TEST_CASE("enumerate_models: counts") {
  CHECK(count(enumerate_models(1)) == 2);
  CHECK(count(enumerate_models(2)) == 16);
  CHECK(count(enumerate_models(3)) == 512);
  CHECK(count(enumerate_models(1, true)) == 2);
  CHECK(count(enumerate_models(2, true)) == count_isomorphism_classes(2));
  CHECK(count_isomorphism_classes(3) == 104);
  CHECK(count(enumerate_models(3, true)) == 104);
}

TEST_CASE("enumerate_models: order and coverage") {
  std::vector<std::uint64_t> codes;
  for (const Model& m : enumerate_models(2)) codes.push_back(adjacency_code(m));
  std::vector<std::uint64_t> expected(16);
  std::iota(expected.begin(), expected.end(), 0);
  CHECK(codes == expected);

  // Every 3-state model is isomorphic to exactly one pruned representative.
  std::set<std::uint64_t> reps;
  for (auto it = enumerate_models(3, true).begin(); it != enumerate_models(3, true).end(); ++it)
    reps.insert(it.code());
  for (std::uint64_t code = 0; code < 512; ++code) REQUIRE(reps.contains(canonical_code(3, code)));
}

TEST_CASE("canonical check reports automorphic start states") {
  // Two-cycle: swapping the states is an automorphism, so start 1 is redundant.
  const auto c = check_canonical(2, adjacency_code(testing::two_cycle()));
  CHECK(c.canonical);
  CHECK(c.redundant_starts.contains(1));
  CHECK_FALSE(c.redundant_starts.contains(0));
  CHECK(check_canonical(2, 0b0010).canonical);  // edge 0->1 has the smaller code
  CHECK_FALSE(check_canonical(2, 0b0100).canonical);
}

TEST_CASE("sat_bounded: anchors") {
  SearchConfig cfg;
  for (State n = 1; n <= 3; ++n) {
    cfg.max_states = n;
    const auto r = sat_bounded(known(), cfg);
    REQUIRE(std::holds_alternative<NoModelUpTo>(r.verdict));
    CHECK(std::get<NoModelUpTo>(r.verdict).bound == n);
  }
  cfg.max_states = 1;
  const auto r = sat_bounded(dia(known()), cfg);
  REQUIRE(std::holds_alternative<Found>(r.verdict));
  CHECK(std::get<Found>(r.verdict).model == testing::reflexive_singleton());
  CHECK(std::get<Found>(r.verdict).state == 0);
}

TEST_CASE("sat_bounded: config validation") {
  SearchConfig cfg;
  cfg.max_states = 0;
  CHECK_THROWS_AS(sat_bounded(known(), cfg), SearchError);
  cfg.max_states = kMaxEnumerationStates + 1;
  CHECK_THROWS_AS(sat_bounded(known(), cfg), SearchError);
  cfg.max_states = 2;
  cfg.parallel_shards = 0;
  CHECK_THROWS_AS(sat_bounded(known(), cfg), SearchError);
}

TEST_CASE("sat_bounded: witness is the least triple, checked by brute force") {
  const char* texts[] = {"<><>k & ~<>k", "<>~k & <>k", "<><><>k & ~<><>k & ~<>k", "<>(~k & <>~k & []<>k)"};
  for (const char* t : texts) {
    const Formula f = parse_formula(t);
    std::optional<std::pair<Model, State>> least;
    for (const auto& m : testing::all_models_up_to(3)) {
      for (State s = 0; s < m.state_count() && !least; ++s)
        if (eval_naive(m, {StateSet{}, s}, f)) least = {m, s};
      if (least) break;
    }
    SearchConfig cfg;
    cfg.max_states = 3;
    for (bool prune : {false, true}) {
      for (unsigned shards : {1u, 3u, 8u}) {
        cfg.prune_isomorphs = prune;
        cfg.parallel_shards = shards;
        const auto r = sat_bounded(f, cfg);
        if (!least) {
          REQUIRE(std::holds_alternative<NoModelUpTo>(r.verdict));
          continue;
        }
        REQUIRE(std::holds_alternative<Found>(r.verdict));
        CHECK(std::get<Found>(r.verdict).model == least->first);
        CHECK(std::get<Found>(r.verdict).state == least->second);
      }
    }
  }
}

TEST_CASE("sat_bounded: pruning soundness and monotonicity over a corpus") {
  const auto corpus = testing::formulas_up_to(3);
  for (const auto& f : corpus) {
    SearchConfig pruned, full;
    pruned.max_states = full.max_states = 3;
    full.prune_isomorphs = false;
    const auto a = sat_bounded(f, pruned);
    const auto b = sat_bounded(f, full);
    REQUIRE(a.verdict.index() == b.verdict.index());
    if (const auto* found = std::get_if<Found>(&a.verdict)) {
      CHECK(found->model == std::get<Found>(b.verdict).model);
      CHECK(found->state == std::get<Found>(b.verdict).state);
      CHECK(eval_naive(found->model, {StateSet{}, found->state}, f));
      // Every larger bound also finds it.
      for (State n = found->model.state_count(); n <= 3; ++n) {
        SearchConfig c;
        c.max_states = n;
        REQUIRE(std::holds_alternative<Found>(sat_bounded(f, c).verdict));
      }
    }
  }
}

TEST_CASE("sat_bounded: budget exhaustion is distinct from no-model") {
  // A formula that no model satisfies, with a budget too small to finish 5 states.
  SearchConfig cfg;
  cfg.max_states = 5;
  cfg.prune_isomorphs = false;
  cfg.time_budget = std::chrono::milliseconds(1);
  const auto r = sat_bounded(known(), cfg);
  REQUIRE(std::holds_alternative<BudgetExceeded>(r.verdict));
  CHECK(std::get<BudgetExceeded>(r.verdict).completed_bound < 5);
}

TEST_CASE("sat_bounded: progress callback reports completed bounds") {
  std::vector<State> bounds;
  SearchConfig cfg;
  cfg.max_states = 3;
  cfg.progress = [&](const SearchProgress& p) { bounds.push_back(p.bound); };
  (void)sat_bounded(known(), cfg);
  CHECK(bounds == std::vector<State>{1, 2, 3});
}
