#include "memlog/translation.hpp"

#include "memlog/eval.hpp"
#include "memlog/satsearch.hpp"

namespace memlog {

const std::string& NominalContext::introduce() {
  names_.push_back("i" + std::to_string(counter_++));
  return names_.back();
}

namespace {

HFormula tr(const Formula& f, NominalContext& ctx, TranslationMode mode) {
  switch (f.op()) {
    case Op::Known: {
      std::vector<HFormula> noms;
      for (const auto& n : ctx.names()) noms.push_back(HFormula::nominal(n));
      return hdisj_all(noms);
    }
    case Op::Neg:
      return HFormula::neg(tr(f.child(), ctx, mode));
    case Op::And: {
      HFormula l = tr(f.left(), ctx, mode);
      HFormula r = tr(f.right(), ctx, mode);
      return HFormula::conj(std::move(l), std::move(r));
    }
    case Op::Dia: {
      const std::string name = ctx.introduce();
      HFormula body = tr(f.child(), ctx, mode);
      ctx.drop_last();
      if (mode == TranslationMode::Corrected) body = HFormula::dia(std::move(body));
      return HFormula::down(name, std::move(body));
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

HFormula translate(const Formula& f, TranslationMode mode) {
  NominalContext ctx;
  return tr(f, ctx, mode);
}

EquivalenceReport translation_equiv_check(State max_states, const std::vector<Formula>& corpus,
                                          TranslationMode mode) {
  EquivalenceReport report;
  std::vector<HFormula> translated;
  std::vector<Evaluator> evaluators;
  for (const auto& f : corpus) {
    translated.push_back(translate(f, mode));
    evaluators.emplace_back(f);
  }
  const NominalAssignment empty;
  for (State n = 1; n <= max_states; ++n) {
    for (const Model& m : enumerate_models(n)) {
      for (std::size_t i = 0; i < corpus.size(); ++i) {
        evaluators[i].bind(m);
        for (State s = 0; s < n; ++s) {
          const bool mem = evaluators[i].eval(EvalContext{StateSet{}, s});
          const bool hyb = heval(m, empty, s, translated[i]);
          ++report.checks;
          if (mem != hyb) report.discrepancies.push_back({i, m, s, mem, hyb});
        }
      }
    }
  }
  return report;
}

}  // namespace memlog
