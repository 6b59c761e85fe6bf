#include "memlog/constructions.hpp"

#include <fstream>
#include <memory>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "memlog/eval.hpp"

namespace memlog {

// Tile files ----------------------------------------------------------------

TileSet parse_tiles_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConstructionError(std::string("malformed tile file: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("tiles") || !doc["tiles"].is_array())
    throw ConstructionError("tile file must be an object with a \"tiles\" array");
  TileSet out;
  for (const auto& t : doc["tiles"]) {
    if (!t.is_object()) throw ConstructionError("each tile must be an object");
    auto side = [&](const char* key) {
      if (!t.contains(key) || !t[key].is_string())
        throw ConstructionError(std::string("tile side \"") + key + "\" must be a string");
      return t[key].get<std::string>();
    };
    out.tiles.push_back(Tile{side("top"), side("right"), side("bottom"), side("left")});
  }
  if (out.tiles.empty()) throw ConstructionError("tile set is empty");
  return out;
}

TileSet load_tiles_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConstructionError("cannot open tile file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_tiles_json(buf.str());
}

// Macro table ----------------------------------------------------------------

std::string MacroTable::counter(int i) { return "c" + std::to_string(i); }
std::string MacroTable::tile(std::size_t n) { return "t_" + std::to_string(n); }

MacroTable MacroTable::for_tiles(std::size_t k) {
  MacroTable t;
  for (int i = 0; i < 3; ++i) t.lengths_[counter(i)] = static_cast<std::size_t>(i) + 1;
  t.lengths_["u"] = 4;
  t.lengths_["r"] = 5;
  for (std::size_t n = 1; n <= k; ++n) t.lengths_[tile(n)] = 5 + n;
  return t;
}

bool MacroTable::contains(std::string_view name) const { return lengths_.find(name) != lengths_.end(); }

std::size_t MacroTable::length(std::string_view name) const {
  auto it = lengths_.find(name);
  if (it == lengths_.end()) throw UnknownMacro(std::string(name));
  return it->second;
}

// Basic macros ----------------------------------------------------------------

Formula build_s() { return dia(box(bot())); }

Formula propositional_guard() { return conj(conj(build_s(), neg(known())), box(neg(known()))); }

Formula expand_macro(std::string_view name, Polarity polarity, const MacroTable& table) {
  const Formula chain = dia_n(table.length(name), box(bot()));
  if (polarity == Polarity::Positive) return dia(conj(propositional_guard(), chain));
  return box(imp(propositional_guard(), chain));
}

namespace {

// Formulas over macro atoms. Leaves embed finished core formulas; Macro
// leaves are propositional macros awaiting a polarity.
struct Pattern {
  enum class Kind { Leaf, Macro, Neg, And, Or, Imp, Dia, Box };
  Kind kind;
  Formula leaf{known()};
  std::string name;
  std::shared_ptr<const Pattern> a;
  std::shared_ptr<const Pattern> b;
};
using P = std::shared_ptr<const Pattern>;

P make(Pattern::Kind kind, P a = nullptr, P b = nullptr) {
  return std::make_shared<const Pattern>(Pattern{kind, known(), {}, std::move(a), std::move(b)});
}
P leaf(Formula f) { return std::make_shared<const Pattern>(Pattern{Pattern::Kind::Leaf, std::move(f), {}, nullptr, nullptr}); }
P mac(std::string name) {
  return std::make_shared<const Pattern>(Pattern{Pattern::Kind::Macro, known(), std::move(name), nullptr, nullptr});
}
P pneg(P a) { return make(Pattern::Kind::Neg, std::move(a)); }
P pand(P a, P b) { return make(Pattern::Kind::And, std::move(a), std::move(b)); }
P pand(P a, P b, P c) { return pand(pand(std::move(a), std::move(b)), std::move(c)); }
P por(P a, P b) { return make(Pattern::Kind::Or, std::move(a), std::move(b)); }
P pimp(P a, P b) { return make(Pattern::Kind::Imp, std::move(a), std::move(b)); }
P pdia(P a) { return make(Pattern::Kind::Dia, std::move(a)); }
P pbox(P a) { return make(Pattern::Kind::Box, std::move(a)); }

P pk() { return leaf(known()); }
P ps() { return leaf(build_s()); }
P not_s() { return pneg(ps()); }
P dia_top() { return leaf(dia(top())); }

P pand_all(std::vector<P> ps) {
  if (ps.empty()) return leaf(top());
  P acc = ps.front();
  for (std::size_t i = 1; i < ps.size(); ++i) acc = pand(acc, ps[i]);
  return acc;
}
P por_all(std::vector<P> ps) {
  if (ps.empty()) return leaf(bot());
  P acc = ps.front();
  for (std::size_t i = 1; i < ps.size(); ++i) acc = por(acc, ps[i]);
  return acc;
}

P remember(P phi) { return pbox(pimp(pand(pneg(pk()), ps()), pbox(pimp(pk(), std::move(phi))))); }

// Literal expansion through the connective helpers; macros not allowed.
Formula lower_direct(const P& p) {
  using K = Pattern::Kind;
  switch (p->kind) {
    case K::Leaf: return p->leaf;
    case K::Macro: throw std::logic_error("macro '" + p->name + "' needs a polarity");
    case K::Neg: return neg(lower_direct(p->a));
    case K::And: return conj(lower_direct(p->a), lower_direct(p->b));
    case K::Or: return disj(lower_direct(p->a), lower_direct(p->b));
    case K::Imp: return imp(lower_direct(p->a), lower_direct(p->b));
    case K::Dia: return dia(lower_direct(p->a));
    case K::Box: return box(lower_direct(p->a));
  }
  throw std::logic_error("unreachable");
}

// Negation normal form over leaves and macro atoms: afterwards Neg only
// wraps a Leaf or a Macro, and Imp is gone.
P pattern_nnf(const P& p, bool positive) {
  using K = Pattern::Kind;
  switch (p->kind) {
    case K::Leaf:
    case K::Macro:
      return positive ? p : pneg(p);
    case K::Neg:
      return pattern_nnf(p->a, !positive);
    case K::And: {
      P l = pattern_nnf(p->a, positive), r = pattern_nnf(p->b, positive);
      return positive ? pand(l, r) : por(l, r);
    }
    case K::Or: {
      P l = pattern_nnf(p->a, positive), r = pattern_nnf(p->b, positive);
      return positive ? por(l, r) : pand(l, r);
    }
    case K::Imp: {
      P l = pattern_nnf(p->a, !positive), r = pattern_nnf(p->b, positive);
      return positive ? por(l, r) : pand(l, r);
    }
    case K::Dia: {
      P c = pattern_nnf(p->a, positive);
      return positive ? pdia(c) : pbox(c);
    }
    case K::Box: {
      P c = pattern_nnf(p->a, positive);
      return positive ? pbox(c) : pdia(c);
    }
  }
  throw std::logic_error("unreachable");
}

struct PolarLowering {
  const MacroTable& table;
  int group;
  std::vector<MacroUse>& uses;

  Formula substitute(const std::string& name, Polarity pol) {
    uses.push_back({group, name, pol});
    return expand_macro(name, pol, table);
  }

  // Pre: p is in pattern NNF.
  Formula lower(const P& p) {
    using K = Pattern::Kind;
    switch (p->kind) {
      case K::Leaf: return p->leaf;
      case K::Macro: return substitute(p->name, Polarity::Positive);
      case K::Neg:
        if (p->a->kind == K::Leaf) return neg(p->a->leaf);
        if (p->a->kind == K::Macro) return substitute(p->a->name, Polarity::Negative);
        throw std::logic_error("negation over a compound pattern survived normalization");
      case K::And: return conj(lower(p->a), lower(p->b));
      case K::Or: return disj(lower(p->a), lower(p->b));
      case K::Dia: return dia(lower(p->a));
      case K::Box: return box(lower(p->a));
      case K::Imp: throw std::logic_error("implication survived normalization");
    }
    throw std::logic_error("unreachable");
  }
};

P counter_atom(int i) { return mac(MacroTable::counter(i)); }

}  // namespace

Formula build_switch_macro() {
  const P body = pimp(dia_top(), pand(pk(), not_s(), pbox(pimp(pand(ps(), pdia(pk())), pk()))));
  return lower_direct(pand(pand(pneg(pk()), ps(), pdia(pand(pk(), not_s()))), pbox(body)));
}

Formula build_remember(const Formula& f) { return lower_direct(remember(leaf(f))); }

Formula build_known_prime() { return lower_direct(pand(pk(), pbox(pimp(pand(ps(), pdia(pk())), pk())))); }

// Inf -------------------------------------------------------------------------

std::vector<Formula> inf_conjuncts() {
  const P a_or_b = pand(pk(), pdia(pand(pk(), not_s())));
  const P c = pand(pk(), pbox(pimp(pk(), ps())));
  std::vector<P> parts{
      ps(),
      pbox(not_s()),
      pbox(pbox(pimp(pk(), ps()))),
      pdia(pdia(pk())),
      pbox(pimp(dia_top(), pdia(pand(pneg(pk()), not_s())))),
      pbox(pbox(pimp(not_s(), pdia(pand(pk(), ps(), pdia(pand(pk(), pbox(pimp(pk(), ps()))))))))),
      pbox(pbox(pimp(not_s(), pbox(pimp(not_s(), pdia(pand(pk(), ps(), pbox(pimp(a_or_b, pdia(c))))))))))};
  std::vector<Formula> out;
  for (const auto& p : parts) out.push_back(lower_direct(p));
  return out;
}

Formula build_inf() {
  const auto parts = inf_conjuncts();
  return conj_all(parts);
}

// Grid(T) ---------------------------------------------------------------------

std::array<Formula, 8> grid_structure_groups() {
  const P sw = leaf(build_switch_macro());
  const P kprime = leaf(build_known_prime());
  return {
      lower_direct(ps()),
      lower_direct(pbox(not_s())),
      lower_direct(pbox(pbox(pimp(pk(), ps())))),
      lower_direct(pbox(pimp(dia_top(), pdia(pk())))),
      lower_direct(pbox(pbox(pimp(not_s(), pdia(pand(pk(), not_s())))))),
      lower_direct(pbox(pimp(dia_top(), pdia(sw)))),
      lower_direct(pbox(pbox(pimp(not_s(), pdia(sw))))),
      lower_direct(pbox(pbox(pimp(not_s(), remember(pbox(pbox(pimp(pand(pk(), ps()), pdia(kprime)))))))))};
}

GridBuild build_grid_detailed(const TileSet& t) {
  if (t.tiles.empty()) throw ConstructionError("tile set is empty");
  const std::size_t k = t.tiles.size();
  GridBuild out{MacroTable::for_tiles(k), {}, {}, known()};

  const auto structure = grid_structure_groups();
  for (std::size_t g = 0; g < structure.size(); ++g) out.groups[g].push_back(structure[g]);

  const P u = mac("u");
  const P r = mac("r");
  const P kprime = leaf(build_known_prime());
  auto tile = [](std::size_t n) { return mac(MacroTable::tile(n)); };
  // "~s & x"
  auto grid_step = [](P x) { return pand(not_s(), std::move(x)); };

  std::array<std::vector<P>, 17> patterns;
  for (int i = 0; i < 3; ++i) {
    const P ci = counter_atom(i);
    const P succ = counter_atom(counter_succ(i));
    const P pred = counter_atom(counter_pred(i));

    patterns[8].push_back(pbox(pimp(pand(dia_top(), ci), pdia(pand(not_s(), u, pdia(grid_step(succ)))))));
    patterns[9].push_back(pbox(pimp(pand(dia_top(), ci), pdia(pand(not_s(), r, pdia(grid_step(pred)))))));

    auto functional = [&](const P& rel, const P& next) {
      return pbox(pimp(
          pand(dia_top(), next),
          remember(pbox(pimp(
              grid_step(rel),
              pbox(pimp(grid_step(ci),
                        pand(pneg(pk()), pbox(pimp(grid_step(rel), pbox(pimp(grid_step(next), kprime))))))))))));
    };
    patterns[10].push_back(functional(u, succ));
    patterns[11].push_back(functional(r, pred));

    const P closing =
        pdia(pand(not_s(), u,
                  pdia(pand(not_s(), ci, pdia(pand(not_s(), r, pdia(pand(not_s(), succ, kprime))))))));
    patterns[12].push_back(pbox(pimp(
        pand(dia_top(), succ),
        remember(pbox(pimp(
            grid_step(u),
            pbox(pimp(grid_step(ci), pbox(pimp(grid_step(r), pbox(pimp(grid_step(pred), closing))))))))))));

    std::vector<P> some_tile;
    std::vector<P> exclusive;
    for (std::size_t n = 1; n <= k; ++n) {
      some_tile.push_back(tile(n));
      for (std::size_t m = n + 1; m <= k; ++m) exclusive.push_back(pneg(pand(tile(n), tile(m))));
    }
    patterns[13].push_back(pbox(pimp(pand(dia_top(), ci), pand(por_all(some_tile), pand_all(exclusive)))));

    for (std::size_t n = 1; n <= k; ++n) {
      std::vector<P> above;
      std::vector<P> beside;
      for (std::size_t m = 1; m <= k; ++m) {
        if (t.tiles[n - 1].top == t.tiles[m - 1].bottom) above.push_back(tile(m));
        if (t.tiles[n - 1].right == t.tiles[m - 1].left) beside.push_back(tile(m));
      }
      patterns[14].push_back(pbox(pimp(pand(dia_top(), ci, tile(n)),
                                       pbox(pimp(grid_step(u), pbox(pimp(grid_step(succ), por_all(above))))))));
      patterns[15].push_back(pbox(pimp(pand(dia_top(), ci, tile(n)),
                                       pbox(pimp(grid_step(r), pbox(pimp(grid_step(pred), por_all(beside))))))));
    }
  }
  patterns[16].push_back(pdia(pand(dia_top(), counter_atom(0))));

  for (int g = 9; g <= 17; ++g) {
    PolarLowering lowering{out.table, g, out.macro_uses};
    for (const auto& p : patterns[g - 1]) out.groups[g - 1].push_back(lowering.lower(pattern_nnf(p, true)));
  }

  std::vector<Formula> all;
  for (const auto& group : out.groups) all.insert(all.end(), group.begin(), group.end());
  out.formula = conj_all(all);
  return out;
}

Formula build_grid(const TileSet& t) { return build_grid_detailed(t).formula; }

// Fragment ----------------------------------------------------------------------

Model grid_fragment_model() {
  constexpr State spy = kFragmentSpy, dead = 1;
  Model m(10);
  m.add_edge(spy, dead);
  for (State g = 2; g <= 5; ++g) {
    const State w = g + 4;
    m.add_edge(spy, g);
    m.add_edge(g, spy);
    m.add_edge(g, w);
    m.add_edge(w, g);
    m.add_edge(w, dead);
  }
  const std::pair<State, State> grid_edges[] = {{2, 3}, {2, 4}, {3, 5}, {4, 5}};
  for (auto [a, b] : grid_edges) {
    m.add_edge(a, b);
    m.add_edge(b, a);
  }
  return m;
}

std::vector<FragmentMutation> grid_fragment_mutations() {
  std::vector<FragmentMutation> out;
  Model m = grid_fragment_model();
  m.remove_edge(6, 2);
  out.push_back({"switch w1 loses its back-edge to g1", m, 6});
  m = grid_fragment_model();
  m.remove_edge(2, kFragmentSpy);
  out.push_back({"grid state g1 no longer sees spy", m, 4});
  m = grid_fragment_model();
  m.remove_edge(3, 2);
  out.push_back({"grid edge g1-g2 made one-directional (g2 -/-> g1)", m, 5});
  return out;
}

std::array<bool, 8> fragment_group_results(const Model& m, State spy) {
  const auto groups = grid_structure_groups();
  std::array<bool, 8> out{};
  for (std::size_t g = 0; g < groups.size(); ++g) out[g] = eval(m, EvalContext{StateSet{}, spy}, groups[g]);
  return out;
}

bool check_grid_fragment() {
  for (bool ok : fragment_group_results(grid_fragment_model())) {
    if (!ok) return false;
  }
  return true;
}

}  // namespace memlog
