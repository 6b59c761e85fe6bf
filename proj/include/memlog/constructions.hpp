// Generators for the infinity formula and the tiling-reduction formula
// Grid(T), with every macro expanded to the four core constructors.
//
// Macro vocabulary:
//   s          <>[]false                         "sees a dead-end"
//   sw         switch-state test
//   r'(f)      [](~k & s -> [](k -> f))          remember the current grid state
//   k'         k & []((s & <>k) -> k)            the grid state was remembered
//   p (chain)  <>(s & ~k & []~k & <>^p []false)  propositional macro of length p
//  ~p (chain)  [](s & ~k & []~k -> <>^p []false) its polarity-negative form

#ifndef MEMLOG_CONSTRUCTIONS_HPP
#define MEMLOG_CONSTRUCTIONS_HPP

#include <array>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "memlog/formula.hpp"
#include "memlog/model.hpp"

namespace memlog {

struct Tile {
  std::string top;
  std::string right;
  std::string bottom;
  std::string left;
  friend bool operator==(const Tile&, const Tile&) = default;
};

struct TileSet {
  std::vector<Tile> tiles;
};

class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// {"tiles":[{"top":"a","right":"b","bottom":"a","left":"b"}, ...]}
TileSet parse_tiles_json(std::string_view text);
TileSet load_tiles_file(const std::string& path);

enum class Polarity { Positive, Negative };

// Chain lengths for the propositional macros: c0->1, c1->2, c2->3, u->4,
// r->5, t_n->5+n (tiles numbered from 1).
class MacroTable {
 public:
  static MacroTable for_tiles(std::size_t k);

  std::size_t length(std::string_view name) const;
  bool contains(std::string_view name) const;
  const std::map<std::string, std::size_t, std::less<>>& entries() const { return lengths_; }

  static std::string counter(int i);         // "c0", "c1", "c2"
  static std::string tile(std::size_t n);    // "t_1", ... (1-based)

 private:
  std::map<std::string, std::size_t, std::less<>> lengths_;
};

class UnknownMacro : public std::runtime_error {
 public:
  explicit UnknownMacro(const std::string& name) : std::runtime_error("unknown macro '" + name + "'") {}
};

// s & ~k & []~k
Formula propositional_guard();
Formula expand_macro(std::string_view name, Polarity polarity, const MacroTable& table);

Formula build_s();                        // <>[]false
Formula build_switch_macro();             // sw
Formula build_remember(const Formula& f); // r'(f)
Formula build_known_prime();              // k'

// The seven conjuncts of Inf, in order, and their left-nested conjunction.
std::vector<Formula> inf_conjuncts();
Formula build_inf();

// Counter arithmetic on {0,1,2}.
constexpr int counter_succ(int i) { return (i + 1) % 3; }
constexpr int counter_pred(int i) { return (i + 2) % 3; }

struct MacroUse {
  int group;
  std::string name;
  Polarity polarity;
};

struct GridBuild {
  MacroTable table;
  // groups[g-1] holds the instances of formula group g, g = 1..17.
  std::array<std::vector<Formula>, 17> groups;
  // Every macro substitution performed, in build order.
  std::vector<MacroUse> macro_uses;
  Formula formula;
};

GridBuild build_grid_detailed(const TileSet& t);
Formula build_grid(const TileSet& t);

// Expected number of top-level conjuncts of build_grid for k tiles.
constexpr std::size_t grid_conjunct_count(std::size_t k) { return 9 + 5 * 3 + 3 + 2 * 3 * k; }

// The first eight groups do not depend on the tile set.
std::array<Formula, 8> grid_structure_groups();

// Finite fragment of an intended Grid(T) model:
//
//   state 0      spy; sees the dead-end and every grid state
//   state 1      dead-end
//   states 2..5  grid states g1..g4 on a 2x2 grid, edges in both directions
//                g1-g2, g1-g3, g2-g4, g3-g4; each grid state sees spy
//   states 6..9  switch states w1..w4; g_i -> w_i, w_i -> g_i, w_i -> dead-end
//
// The spy state is the evaluation point.
inline constexpr State kFragmentSpy = 0;
Model grid_fragment_model();

struct FragmentMutation {
  std::string description;
  Model model;
  int breaks_group;  // a group (1-based) expected to fail on this model
};
std::vector<FragmentMutation> grid_fragment_mutations();

// Truth of groups 1..8 at the spy state, from empty memory.
std::array<bool, 8> fragment_group_results(const Model& m, State spy = kFragmentSpy);

// All of groups 1..8 hold at the spy state of the shipped fragment.
bool check_grid_fragment();

}  // namespace memlog

#endif  // MEMLOG_CONSTRUCTIONS_HPP
