#include <doctest.h>

#include <set>

#include "memlog/constructions.hpp"
#include "memlog/eval.hpp"
#include "memlog/parser.hpp"
#include "testing.hpp"

using namespace memlog;

namespace {

TileSet uniform_tiles(std::size_t k) {
  TileSet t;
  for (std::size_t i = 0; i < k; ++i) t.tiles.push_back({"a", "a", "a", "a"});
  return t;
}

// Length p of a chain <>^p []false, or 0 when f is not one.
std::size_t chain_length(Formula f) {
  std::size_t p = 0;
  while (f.op() == Op::Dia) {
    if (f == build_s()) return p + 1;
    f = f.child();
    ++p;
  }
  return 0;
}

// Chain lengths of every propositional macro instance, found structurally:
// positive instances contain And(guard, chain), negative ones
// And(guard, ~chain).
std::set<std::size_t> macro_lengths(const Formula& f) {
  const Formula guard = parse_formula("<>[]false & ~k & []~k");
  std::set<std::size_t> out;
  testing::for_each_subterm(f, [&](const Formula& g) {
    if (g.op() != Op::And || !(g.left() == guard)) return;
    Formula chain = g.right();
    if (chain.op() == Op::Neg) chain = chain.child();
    if (std::size_t p = chain_length(chain)) out.insert(p);
  });
  return out;
}

}  // namespace

TEST_CASE("helper macros expand to the expected core formulas") {
  CHECK(build_s() == parse_formula("<>[]false"));
  CHECK(propositional_guard() == parse_formula("<>[]false & ~k & []~k"));
  CHECK(build_known_prime() == parse_formula("k & []((<>[]false & <>k) -> k)"));
  CHECK(build_remember(known()) == parse_formula("[](~k & <>[]false -> [](k -> k))"));
  CHECK(build_switch_macro() ==
        parse_formula("~k & <>[]false & <>(k & ~<>[]false) &"
                      "[](<>true -> k & ~<>[]false & [](<>[]false & <>k -> k))"));
}

TEST_CASE("expand_macro: both polarities") {
  const MacroTable table = MacroTable::for_tiles(2);
  CHECK(expand_macro("c0", Polarity::Positive, table) == parse_formula("<>(<>[]false & ~k & []~k & <>[]false)"));
  CHECK(expand_macro("u", Polarity::Negative, table) ==
        parse_formula("[](<>[]false & ~k & []~k -> <><><><>[]false)"));
  CHECK(table.length("t_2") == 7);
  CHECK_FALSE(table.contains("t_3"));
  CHECK_THROWS_AS((void)expand_macro("t_3", Polarity::Positive, table), UnknownMacro);
  CHECK_THROWS_AS((void)table.length("q"), UnknownMacro);
}

TEST_CASE("macro table lengths") {
  const MacroTable table = MacroTable::for_tiles(4);
  CHECK(table.length("c0") == 1);
  CHECK(table.length("c1") == 2);
  CHECK(table.length("c2") == 3);
  CHECK(table.length("u") == 4);
  CHECK(table.length("r") == 5);
  for (std::size_t n = 1; n <= 4; ++n) CHECK(table.length(MacroTable::tile(n)) == 5 + n);
  CHECK(table.entries().size() == 9);
}

TEST_CASE("counter arithmetic") {
  for (int i = 0; i < 3; ++i) {
    CHECK(counter_pred(counter_succ(i)) == i);
    CHECK(counter_succ(i) == (i + 1) % 3);
  }
  static_assert(counter_succ(2) == 0 && counter_pred(0) == 2);
}

TEST_CASE("Inf: conjunct shape") {
  const auto parts = inf_conjuncts();
  REQUIRE(parts.size() == 7);
  CHECK(parts[0] == dia(box(bot())));
  CHECK(parts[3] == dia(dia(known())));
  CHECK(build_inf() == conj_all(parts));
  std::vector<Formula> flat;
  testing::flatten_conj(build_inf(), flat);
  CHECK(flat.size() == 7);
}

TEST_CASE("Inf: no model up to three states, checked directly") {
  const Formula inf = build_inf();
  Evaluator ev(inf);
  for (const auto& m : testing::all_models_up_to(3)) {
    ev.bind(m);
    for (State s = 0; s < m.state_count(); ++s) REQUIRE_FALSE(ev.eval({StateSet{}, s}));
  }
}

TEST_CASE("Grid: conjunct counts and chain lengths") {
  for (std::size_t k : {1u, 2u, 4u}) {
    const GridBuild g = build_grid_detailed(uniform_tiles(k));
    std::vector<Formula> flat;
    testing::flatten_conj(g.formula, flat);
    CHECK(flat.size() == grid_conjunct_count(k));
    CHECK(flat.size() == 27 + 6 * k);

    std::set<std::size_t> expected;
    for (std::size_t p = 1; p <= 5 + k; ++p) expected.insert(p);
    CHECK(macro_lengths(g.formula) == expected);

    // Closed: re-parsing the printed formula yields the same tree.
    CHECK(parse_formula(print_formula(g.formula)) == g.formula);
  }
}

TEST_CASE("Grid: group sizes") {
  const GridBuild g = build_grid_detailed(uniform_tiles(2));
  for (int i = 0; i < 8; ++i) CHECK(g.groups[i].size() == 1);
  for (int i = 8; i < 14; ++i) CHECK(g.groups[i].size() == 3);
  CHECK(g.groups[14].size() == 6);
  CHECK(g.groups[15].size() == 6);
  CHECK(g.groups[16].size() == 1);
}

TEST_CASE("Grid: the initial-state group") {
  const GridBuild g = build_grid_detailed(uniform_tiles(1));
  CHECK(g.groups[16].front() == dia(conj(dia(top()), expand_macro("c0", Polarity::Positive, g.table))));
}

TEST_CASE("Grid: a single tile needs no exclusivity conjuncts") {
  const GridBuild g = build_grid_detailed(uniform_tiles(1));
  const MacroTable& t = g.table;
  // [](<>true & c_i -> t_1 & true) in polarity normal form:
  // [](~<>true | ~c_i | t_1 & true), with ~c_i as the negative macro form.
  for (int i = 0; i < 3; ++i) {
    const Formula not_ci = expand_macro(MacroTable::counter(i), Polarity::Negative, t);
    const Formula expected =
        box(disj(disj(neg(dia(top())), not_ci), conj(expand_macro("t_1", Polarity::Positive, t), top())));
    CHECK(g.groups[13][i] == expected);
  }
}

TEST_CASE("Grid: every macro use has a definite polarity") {
  const GridBuild g = build_grid_detailed(uniform_tiles(2));
  REQUIRE_FALSE(g.macro_uses.empty());
  std::set<std::string> names;
  bool saw_negative = false;
  for (const auto& use : g.macro_uses) {
    CHECK(use.group >= 9);
    CHECK(use.group <= 17);
    CHECK(g.table.contains(use.name));
    saw_negative = saw_negative || use.polarity == Polarity::Negative;
    names.insert(use.name);
  }
  CHECK(saw_negative);
  CHECK(names.size() == g.table.entries().size());
}

TEST_CASE("Grid: tile compatibility drives the disjunctions") {
  // One tile whose top never matches any bottom: the above-disjunction is empty.
  TileSet t;
  t.tiles.push_back({"x", "a", "y", "a"});
  const GridBuild g = build_grid_detailed(t);
  CHECK(testing::count_subterms(g.groups[14].front(), bot()) > 0);
  CHECK_THROWS_AS((void)build_grid_detailed(TileSet{}), ConstructionError);
}

TEST_CASE("fragment model satisfies the structural groups") {
  CHECK(check_grid_fragment());
  const auto results = fragment_group_results(grid_fragment_model());
  for (bool r : results) CHECK(r);
}

TEST_CASE("fragment mutations each break their group") {
  const auto mutations = grid_fragment_mutations();
  REQUIRE(mutations.size() == 3);
  for (const auto& mu : mutations) {
    INFO(mu.description);
    const auto results = fragment_group_results(mu.model);
    CHECK_FALSE(results[mu.breaks_group - 1]);
  }
}

TEST_CASE("shipped fragment file matches the built-in fragment") {
  const auto mf = load_model_file(testing::source_path("data/grid_fragment.json"));
  CHECK(mf.model == grid_fragment_model());
  CHECK(mf.start == kFragmentSpy);
}

TEST_CASE("tile files") {
  const auto t = parse_tiles_json(R"({"tiles":[{"top":"a","right":"b","bottom":"c","left":"d"}]})");
  REQUIRE(t.tiles.size() == 1);
  CHECK(t.tiles[0] == Tile{"a", "b", "c", "d"});
  CHECK_THROWS_AS(parse_tiles_json(R"({"tiles":[]})"), ConstructionError);
  CHECK_THROWS_AS(parse_tiles_json(R"({"tiles":[{"top":"a"}]})"), ConstructionError);
  CHECK_THROWS_AS(parse_tiles_json("[1]"), ConstructionError);
  CHECK_THROWS_AS(parse_tiles_json("{"), ConstructionError);
  for (const char* name : {"k1", "k2", "k4"}) {
    const auto ts = load_tiles_file(testing::source_path(std::string("data/tiles/") + name + ".json"));
    CHECK(ts.tiles.size() == static_cast<std::size_t>(name[1] - '0'));
  }
}
