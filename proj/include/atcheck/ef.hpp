#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "atcheck/system.hpp"

namespace atc {

/// Formula of the EF fragment: literals (optionally negated), conjunction,
/// disjunction and EF. Negation is restricted to literals.
class EfFormula {
 public:
  enum class Kind { Literal, And, Or, Ef };

  static EfFormula lit(std::string prop) { return EfFormula(Kind::Literal, std::move(prop), false, {}); }
  static EfFormula neg(std::string prop) { return EfFormula(Kind::Literal, std::move(prop), true, {}); }
  static EfFormula conj(EfFormula a, EfFormula b) { return binary(Kind::And, std::move(a), std::move(b)); }
  static EfFormula disj(EfFormula a, EfFormula b) { return binary(Kind::Or, std::move(a), std::move(b)); }
  static EfFormula ef(EfFormula inner) {
    return EfFormula(Kind::Ef, {}, false, {std::make_shared<const EfFormula>(std::move(inner))});
  }

  Kind kind() const { return kind_; }
  const std::string& prop() const { return prop_; }
  bool negated() const { return negated_; }
  const EfFormula& left() const { return *children_.at(0); }
  const EfFormula& right() const { return *children_.at(1); }
  const EfFormula& inner() const { return *children_.at(0); }

  /// ASCII rendering: `p`, `!p`, `(a & b)`, `(a | b)`, `EF a`.
  std::string to_string() const {
    switch (kind_) {
      case Kind::Literal: return (negated_ ? "!" : "") + prop_;
      case Kind::And: return "(" + left().to_string() + " & " + right().to_string() + ")";
      case Kind::Or: return "(" + left().to_string() + " | " + right().to_string() + ")";
      case Kind::Ef: return "EF " + inner().to_string();
    }
    return {};
  }

 private:
  EfFormula(Kind kind, std::string prop, bool negated, std::vector<std::shared_ptr<const EfFormula>> children)
      : kind_(kind), prop_(std::move(prop)), negated_(negated), children_(std::move(children)) {}
  static EfFormula binary(Kind k, EfFormula a, EfFormula b) {
    return EfFormula(k, {}, false,
                     {std::make_shared<const EfFormula>(std::move(a)), std::make_shared<const EfFormula>(std::move(b))});
  }

  Kind kind_;
  std::string prop_;
  bool negated_ = false;
  std::vector<std::shared_ptr<const EfFormula>> children_;
};

/// Set of states satisfying `f`; EF is evaluated as coreach.
inline StateSet eval_ef(const TransitionSystem& sys, const EfFormula& f) {
  switch (f.kind()) {
    case EfFormula::Kind::Literal: {
      const auto& s = sys.label(f.prop());
      return f.negated() ? s.complement() : s;
    }
    case EfFormula::Kind::And: return eval_ef(sys, f.left()) & eval_ef(sys, f.right());
    case EfFormula::Kind::Or: return eval_ef(sys, f.left()) | eval_ef(sys, f.right());
    case EfFormula::Kind::Ef: return coreach(sys, eval_ef(sys, f.inner()));
  }
  return sys.empty_set();
}

}  // namespace atc
