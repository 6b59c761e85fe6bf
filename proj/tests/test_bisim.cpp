#include <doctest.h>

#include <random>

#include "memlog/bisim.hpp"
#include "memlog/eval.hpp"
#include "testing.hpp"

using namespace memlog;

TEST_CASE("bisim: two-cycle and reflexive point are bisimilar but separated by <>k") {
  const auto r = bisimilar(testing::two_cycle(), 0, testing::reflexive_singleton(), 0);
  CHECK(r.bisimilar);
  CHECK(r.relation == std::vector<StatePair>{{0, 0}, {1, 0}});
  CHECK(is_bisimulation(testing::two_cycle(), testing::reflexive_singleton(), r.relation));
  CHECK(eval(testing::reflexive_singleton(), {StateSet{}, 0}, dia(known())));
  CHECK_FALSE(eval(testing::two_cycle(), {StateSet{}, 0}, dia(known())));
}

TEST_CASE("bisim: dead end versus loop") {
  const auto r = bisimilar(testing::dead_end_singleton(), 0, testing::reflexive_singleton(), 0);
  CHECK_FALSE(r.bisimilar);
  CHECK(r.relation.empty());
}

TEST_CASE("bisim: every pointed model is bisimilar to itself") {
  for (const auto& m : testing::all_models_up_to(3))
    for (State s = 0; s < m.state_count(); ++s) REQUIRE(bisimilar(m, s, m, s).bisimilar);
}

TEST_CASE("is_bisimulation rejects broken relations") {
  CHECK_FALSE(is_bisimulation(testing::dead_end_singleton(), testing::reflexive_singleton(), {{0, 0}}));
  CHECK(is_bisimulation(testing::dead_end_singleton(), testing::reflexive_singleton(), {}));
  CHECK_FALSE(is_bisimulation(testing::two_cycle(), testing::two_cycle(), {{0, 2}}));
}

TEST_CASE("bisim: returned relations are bisimulations") {
  const auto models = testing::all_models_up_to(2);
  for (const auto& a : models)
    for (const auto& b : models)
      for (State s = 0; s < a.state_count(); ++s)
        for (State t = 0; t < b.state_count(); ++t) {
          const auto r = bisimilar(a, s, b, t);
          if (!r.bisimilar) continue;
          REQUIRE(is_bisimulation(a, b, r.relation));
          REQUIRE(std::find(r.relation.begin(), r.relation.end(), StatePair{s, t}) != r.relation.end());
        }
}

TEST_CASE("bisim: agrees with basic modal equivalence on finite models") {
  // On finite models bisimilarity coincides with agreement on all basic
  // modal formulas; a random sample must never separate bisimilar points.
  std::mt19937_64 rng(13);
  std::vector<testing::BasicPtr> sample;
  for (int i = 0; i < 10000; ++i) sample.push_back(testing::random_basic(rng, 6));
  const auto models = testing::all_models_up_to(2);
  std::size_t separated = 0, pairs = 0;
  for (const auto& a : models)
    for (const auto& b : models)
      for (State s = 0; s < a.state_count(); ++s)
        for (State t = 0; t < b.state_count(); ++t) {
          const bool bis = bisimilar(a, s, b, t).bisimilar;
          bool agree = true;
          for (const auto& f : sample)
            if (testing::eval_basic(a, s, *f) != testing::eval_basic(b, t, *f)) {
              agree = false;
              break;
            }
          if (bis) REQUIRE(agree);
          ++pairs;
          if (!bis && !agree) ++separated;
        }
  // The sample separates every non-bisimilar pair on these small models.
  std::size_t non_bisimilar = 0;
  for (const auto& a : models)
    for (const auto& b : models)
      for (State s = 0; s < a.state_count(); ++s)
        for (State t = 0; t < b.state_count(); ++t) non_bisimilar += !bisimilar(a, s, b, t).bisimilar;
  CHECK(separated == non_bisimilar);
  CHECK(pairs > 0);
}
