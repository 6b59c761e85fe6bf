// Translation from the memory logic into hybrid logic with binder.
//
//   Tr_N(~f)     = ~Tr_N(f)
//   Tr_N(f & g)  = Tr_N(f) & Tr_N(g)
//   Tr_N(k)      = disjunction of the nominals in N (false when N is empty)
//   Tr_N(<>f)    = down i . <> Tr_{N+i}(f)     corrected (default)
//                = down i . Tr_{N+i}(f)        faithful to the printed clause
//
// Fresh nominals are i0, i1, ... in traversal order.

#ifndef MEMLOG_TRANSLATION_HPP
#define MEMLOG_TRANSLATION_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "memlog/formula.hpp"
#include "memlog/hybrid.hpp"
#include "memlog/model.hpp"

namespace memlog {

enum class TranslationMode { Corrected, Faithful };

class NominalContext {
 public:
  const std::vector<std::string>& names() const { return names_; }
  // Appends a name not used before in this context.
  const std::string& introduce();
  void drop_last() { names_.pop_back(); }

 private:
  std::vector<std::string> names_;
  std::size_t counter_ = 0;
};

HFormula translate(const Formula& f, TranslationMode mode = TranslationMode::Corrected);

struct Discrepancy {
  std::size_t formula_index;
  Model model;
  State state;
  bool memory_value;
  bool hybrid_value;
};

struct EquivalenceReport {
  std::uint64_t checks = 0;
  std::vector<Discrepancy> discrepancies;
};

// Compares eval from empty memory against heval of the translation, over
// every model with at most max_states states and every start state.
EquivalenceReport translation_equiv_check(State max_states, const std::vector<Formula>& corpus,
                                          TranslationMode mode = TranslationMode::Corrected);

}  // namespace memlog

#endif  // MEMLOG_TRANSLATION_HPP
