// Finite Kripke frames and their file formats.

#ifndef MEMLOG_MODEL_HPP
#define MEMLOG_MODEL_HPP

#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace memlog {

using State = std::uint32_t;

// States are bit positions, so a model has at most this many states.
inline constexpr State kMaxStates = 64;

class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Set of states as a 64-bit mask.
class StateSet {
 public:
  constexpr StateSet() = default;
  constexpr explicit StateSet(std::uint64_t bits) : bits_(bits) {}

  constexpr bool contains(State s) const { return (bits_ >> s) & 1u; }
  constexpr StateSet with(State s) const { return StateSet(bits_ | (std::uint64_t{1} << s)); }
  constexpr void insert(State s) { bits_ |= std::uint64_t{1} << s; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int count() const { return std::popcount(bits_); }
  constexpr std::uint64_t bits() const { return bits_; }

  std::vector<State> states() const;

  friend constexpr bool operator==(StateSet, StateSet) = default;

 private:
  std::uint64_t bits_ = 0;
};

// Directed graph on states 0..n-1. Edges have set semantics.
class Model {
 public:
  Model() = default;
  explicit Model(State state_count);
  Model(State state_count, const std::vector<std::pair<State, State>>& edges);

  State state_count() const { return static_cast<State>(succ_.size()); }
  void add_edge(State from, State to);
  void remove_edge(State from, State to);
  bool has_edge(State from, State to) const;
  StateSet successors(State s) const { return StateSet(succ_.at(s)); }
  // Sorted lexicographically.
  std::vector<std::pair<State, State>> edges() const;
  std::size_t edge_count() const;

  bool valid_state(State s) const { return s < state_count(); }

  friend bool operator==(const Model&, const Model&) = default;

 private:
  void check_state(State s) const;
  std::vector<std::uint64_t> succ_;
};

// Semantic evaluation point: memory S and current state s.
struct EvalContext {
  StateSet memory;
  State current = 0;
};

// JSON model file: {"states":2,"edges":[[0,1],[1,0]],"start":0}; start optional.
struct ModelFile {
  Model model;
  std::optional<State> start;
};

ModelFile parse_model_json(std::string_view text);
ModelFile load_model_file(const std::string& path);
// Single line, keys in the order states, edges, start.
std::string model_to_json(const Model& m, std::optional<State> start = std::nullopt);

std::string to_dot(const Model& m);

}  // namespace memlog

#endif  // MEMLOG_MODEL_HPP
