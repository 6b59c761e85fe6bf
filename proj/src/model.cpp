#include "memlog/model.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace memlog {

std::vector<State> StateSet::states() const {
  std::vector<State> out;
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(static_cast<State>(std::countr_zero(b)));
  return out;
}

Model::Model(State state_count) {
  if (state_count > kMaxStates)
    throw ModelError("model has " + std::to_string(state_count) + " states; at most " +
                     std::to_string(kMaxStates) + " are supported");
  succ_.assign(state_count, 0);
}

Model::Model(State state_count, const std::vector<std::pair<State, State>>& edges) : Model(state_count) {
  for (auto [from, to] : edges) add_edge(from, to);
}

void Model::check_state(State s) const {
  if (s >= state_count())
    throw ModelError("state " + std::to_string(s) + " out of range for a model with " +
                     std::to_string(state_count()) + " states");
}

void Model::add_edge(State from, State to) {
  check_state(from);
  check_state(to);
  succ_[from] |= std::uint64_t{1} << to;
}

void Model::remove_edge(State from, State to) {
  check_state(from);
  check_state(to);
  succ_[from] &= ~(std::uint64_t{1} << to);
}

bool Model::has_edge(State from, State to) const {
  return from < state_count() && to < state_count() && ((succ_[from] >> to) & 1u);
}

std::vector<std::pair<State, State>> Model::edges() const {
  std::vector<std::pair<State, State>> out;
  for (State from = 0; from < state_count(); ++from)
    for (State to : StateSet(succ_[from]).states()) out.emplace_back(from, to);
  return out;
}

std::size_t Model::edge_count() const {
  std::size_t n = 0;
  for (auto bits : succ_) n += static_cast<std::size_t>(std::popcount(bits));
  return n;
}

namespace {

State json_state(const nlohmann::json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0)
    throw ModelError(std::string(what) + " must be a non-negative integer");
  const auto v = j.get<long long>();
  if (v >= static_cast<long long>(kMaxStates)) throw ModelError(std::string(what) + " out of range");
  return static_cast<State>(v);
}

}  // namespace

ModelFile parse_model_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ModelError(std::string("malformed model file: ") + e.what());
  }
  if (!doc.is_object()) throw ModelError("model file must be a JSON object");
  if (!doc.contains("states")) throw ModelError("model file lacks \"states\"");
  const auto& states = doc["states"];
  if (!states.is_number_integer() || states.get<long long>() < 0 ||
      states.get<long long>() > static_cast<long long>(kMaxStates))
    throw ModelError("\"states\" must be an integer in 0.." + std::to_string(kMaxStates));

  ModelFile out{Model(static_cast<State>(states.get<long long>())), std::nullopt};
  if (doc.contains("edges")) {
    const auto& edges = doc["edges"];
    if (!edges.is_array()) throw ModelError("\"edges\" must be an array");
    for (const auto& e : edges) {
      if (!e.is_array() || e.size() != 2) throw ModelError("each edge must be a two-element array");
      out.model.add_edge(json_state(e[0], "edge endpoint"), json_state(e[1], "edge endpoint"));
    }
  }
  if (doc.contains("start")) {
    const State s = json_state(doc["start"], "\"start\"");
    if (!out.model.valid_state(s)) throw ModelError("\"start\" out of range");
    out.start = s;
  }
  return out;
}

ModelFile load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open model file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_model_json(buf.str());
}

std::string model_to_json(const Model& m, std::optional<State> start) {
  nlohmann::ordered_json doc;
  doc["states"] = m.state_count();
  auto edges = nlohmann::ordered_json::array();
  for (auto [from, to] : m.edges()) edges.push_back({from, to});
  doc["edges"] = std::move(edges);
  if (start) doc["start"] = *start;
  return doc.dump();
}

std::string to_dot(const Model& m) {
  std::ostringstream out;
  out << "digraph model {\n";
  for (State s = 0; s < m.state_count(); ++s) out << "  " << s << ";\n";
  for (auto [from, to] : m.edges()) out << "  " << from << " -> " << to << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace memlog
