#include "memlog/cli.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>

#include <CLI11.hpp>

#include "memlog/bisim.hpp"
#include "memlog/constructions.hpp"
#include "memlog/eval.hpp"
#include "memlog/parser.hpp"
#include "memlog/satsearch.hpp"
#include "memlog/translation.hpp"

namespace memlog::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FormulaSource {
  std::string text;
  std::string file;

  void attach(CLI::App* cmd) {
    auto* t = cmd->add_option("--formula", text, "formula text");
    auto* f = cmd->add_option("--formula-file", file, "file holding the formula ('-' for stdin)");
    t->excludes(f);
  }

  std::string read(std::istream& in) const {
    if (!file.empty()) {
      std::stringstream buf;
      if (file == "-") {
        buf << in.rdbuf();
      } else {
        std::ifstream f(file);
        if (!f) throw UsageError("cannot open formula file " + file);
        buf << f.rdbuf();
      }
      return buf.str();
    }
    if (text.empty()) throw UsageError("one of --formula or --formula-file is required");
    return text;
  }
};

StateSet parse_memory(const std::string& text, const Model& m) {
  StateSet out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string item = text.substr(pos, comma - pos);
    State s = 0;
    auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), s);
    if (item.empty() || ec != std::errc() || end != item.data() + item.size())
      throw UsageError("bad --memory entry '" + item + "'");
    if (!m.valid_state(s)) throw UsageError("--memory state " + item + " out of range");
    out.insert(s);
    pos = comma + 1;
  }
  return out;
}

State pick_state(const std::optional<State>& flag, const ModelFile& mf, const char* name) {
  if (flag) {
    if (!mf.model.valid_state(*flag)) throw UsageError(std::string(name) + " out of range");
    return *flag;
  }
  if (mf.start) return *mf.start;
  throw UsageError(std::string(name) + " is required (the model file has no \"start\")");
}

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"memlog: workbench for the memory logic with remember-and-move diamond"};
  app.require_subcommand(1);

  // check
  auto* check = app.add_subcommand("check", "evaluate a formula at a pointed model");
  std::string check_model;
  std::optional<State> check_state;
  std::string check_memory;
  FormulaSource check_formula;
  check->add_option("--model", check_model, "model file")->required();
  check->add_option("--state", check_state, "evaluation state (defaults to the file's start)");
  check->add_option("--memory", check_memory, "initial memory, comma-separated states");
  check_formula.attach(check);

  // sat
  auto* sat = app.add_subcommand("sat", "search for a model with at most N states");
  State max_states = 1;
  bool no_prune = false;
  unsigned shards = 1;
  double budget_seconds = 0;
  bool progress = false;
  FormulaSource sat_formula;
  sat->add_option("--max-states", max_states, "state bound")->required()->check(
      CLI::Range(State{1}, kMaxEnumerationStates));
  sat->add_flag("--no-prune", no_prune, "disable isomorphism pruning");
  sat->add_option("--shards", shards, "parallel shards")->check(CLI::PositiveNumber);
  sat->add_option("--time-budget", budget_seconds, "give up after this many seconds")->check(CLI::PositiveNumber);
  sat->add_flag("--progress", progress, "report per-bound counts on stderr");
  sat_formula.attach(sat);

  // gen-inf / gen-grid
  auto* gen_inf = app.add_subcommand("gen-inf", "print the infinity formula");
  auto* gen_grid = app.add_subcommand("gen-grid", "print the tiling-reduction formula for a tile set");
  std::string tiles_file;
  gen_grid->add_option("--tiles", tiles_file, "tile set file")->required();

  // translate
  auto* translate_cmd = app.add_subcommand("translate", "translate into hybrid logic with binder");
  bool faithful = false;
  FormulaSource tr_formula;
  translate_cmd->add_flag("--faithful", faithful, "omit the modal step after each binder");
  tr_formula.attach(translate_cmd);

  // bisim
  auto* bisim_cmd = app.add_subcommand("bisim", "decide basic-modal bisimilarity of two pointed models");
  std::string model_a, model_b;
  std::optional<State> state_a, state_b;
  bisim_cmd->add_option("--model-a", model_a, "first model file")->required();
  bisim_cmd->add_option("--state-a", state_a, "state in the first model");
  bisim_cmd->add_option("--model-b", model_b, "second model file")->required();
  bisim_cmd->add_option("--state-b", state_b, "state in the second model");

  // dot
  auto* dot_cmd = app.add_subcommand("dot", "print a model as a DOT digraph");
  std::string dot_model;
  dot_cmd->add_option("--model", dot_model, "model file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitError;
  }

  try {
    if (check->parsed()) {
      const ModelFile mf = load_model_file(check_model);
      const State s = pick_state(check_state, mf, "--state");
      const Formula f = parse_formula(check_formula.read(in));
      const bool v = eval(mf.model, EvalContext{parse_memory(check_memory, mf.model), s}, f);
      out << (v ? "true" : "false") << '\n';
      return v ? kExitYes : kExitNo;
    }

    if (sat->parsed()) {
      const Formula f = parse_formula(sat_formula.read(in));
      SearchConfig cfg;
      cfg.max_states = max_states;
      cfg.prune_isomorphs = !no_prune;
      cfg.parallel_shards = shards;
      if (budget_seconds > 0)
        cfg.time_budget = std::chrono::milliseconds(static_cast<long long>(budget_seconds * 1000));
      if (progress)
        cfg.progress = [&err](const SearchProgress& p) {
          err << "bound " << p.bound << " exhausted, " << p.models_examined << " models examined\n";
        };
      const SearchReport r = sat_bounded(f, cfg);
      if (const auto* found = std::get_if<Found>(&r.verdict)) {
        out << model_to_json(found->model, found->state) << '\n';
        return kExitYes;
      }
      if (const auto* none = std::get_if<NoModelUpTo>(&r.verdict)) {
        out << "no-model-up-to " << none->bound << '\n';
        return kExitNo;
      }
      const auto& budget = std::get<BudgetExceeded>(r.verdict);
      out << "budget-exceeded " << budget.completed_bound << '\n';
      err << "time budget exhausted; bounds up to " << budget.completed_bound << " fully searched, "
          << r.models_examined << " models examined\n";
      return kExitBudget;
    }

    if (gen_inf->parsed()) {
      out << print_formula(build_inf()) << '\n';
      return kExitYes;
    }

    if (gen_grid->parsed()) {
      out << print_formula(build_grid(load_tiles_file(tiles_file))) << '\n';
      return kExitYes;
    }

    if (translate_cmd->parsed()) {
      const Formula f = parse_formula(tr_formula.read(in));
      if (depth(f) > kMaxEvalDepth)
        throw UsageError("formula nesting exceeds " + std::to_string(kMaxEvalDepth) + " levels");
      out << print_hformula(translate(f, faithful ? TranslationMode::Faithful : TranslationMode::Corrected))
          << '\n';
      return kExitYes;
    }

    if (bisim_cmd->parsed()) {
      const ModelFile a = load_model_file(model_a);
      const ModelFile b = load_model_file(model_b);
      const BisimResult r =
          bisimilar(a.model, pick_state(state_a, a, "--state-a"), b.model, pick_state(state_b, b, "--state-b"));
      if (!r.bisimilar) {
        out << "not-bisimilar\n";
        return kExitNo;
      }
      out << "bisimilar\n";
      for (auto [x, y] : r.relation) out << x << ' ' << y << '\n';
      return kExitYes;
    }

    if (dot_cmd->parsed()) {
      out << to_dot(load_model_file(dot_model).model);
      return kExitYes;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace memlog::cli
