// Hybrid logic with the down-arrow binder: nominals, booleans, diamond and
// "down x . f". Standard binder semantics, no @ operator.

#ifndef MEMLOG_HYBRID_HPP
#define MEMLOG_HYBRID_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <stdexcept>
#include <string>

#include "memlog/model.hpp"

namespace memlog {

enum class HOp : std::uint8_t { Nominal, Neg, And, Dia, Down };

class HFormula {
 public:
  static HFormula nominal(std::string name);
  static HFormula neg(HFormula child);
  static HFormula conj(HFormula left, HFormula right);
  static HFormula dia(HFormula child);
  static HFormula down(std::string name, HFormula child);

  HOp op() const noexcept;
  // Pre: op() is Nominal or Down.
  const std::string& name() const;
  // Pre: op() is Neg, Dia or Down.
  const HFormula& child() const;
  const HFormula& left() const;
  const HFormula& right() const;

  friend bool operator==(const HFormula& a, const HFormula& b);

 private:
  struct Node;
  explicit HFormula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

HFormula hdisj(HFormula a, HFormula b);   // ~(~a & ~b)
HFormula himp(HFormula a, HFormula b);    // ~(a & ~b)
HFormula hbox(HFormula f);                // ~<>~f
// Closed contradiction: down _bot . (_bot & ~_bot). The binder name is not
// a lexable identifier, so it never clashes with user nominals.
HFormula hbot();
HFormula htop();                          // ~hbot()
bool is_hbot(const HFormula& h);

inline constexpr const char* kBotNominal = "_bot";

// Left-nested disjunction; empty gives hbot().
HFormula hdisj_all(std::span<const HFormula> fs);

// Names occurring free (not under a binder for that name).
std::set<std::string> free_nominals(const HFormula& h);

// Precedence-minimal; hbot() prints as "false".
std::string print_hformula(const HFormula& h);

using NominalAssignment = std::map<std::string, State, std::less<>>;

class UnboundNominal : public std::runtime_error {
 public:
  explicit UnboundNominal(const std::string& name)
      : std::runtime_error("nominal '" + name + "' is not assigned"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

// Called at every subformula visit with the state and assignment in force.
using HEvalObserver = std::function<void(const HFormula&, State, const NominalAssignment&)>;

bool heval(const Model& m, const NominalAssignment& g, State s, const HFormula& h,
           const HEvalObserver& observer = nullptr);

}  // namespace memlog

#endif  // MEMLOG_HYBRID_HPP
