#pragma once

#include <optional>
#include <string>
#include <vector>

#include "atcheck/error.hpp"
#include "atcheck/path.hpp"
#include "atcheck/system.hpp"

namespace atc {

/// pre >> post: paths that start in λ(pre) and end in λ(post).
struct Goal {
  std::string pre;
  std::string post;
  friend bool operator==(const Goal&, const Goal&) = default;
};

enum class Op { Or, And, Sand };

inline const char* to_string(Op op) {
  switch (op) {
    case Op::Or: return "OR";
    case Op::And: return "AND";
    case Op::Sand: return "SAND";
  }
  return "?";
}

inline std::optional<Op> parse_op(const std::string& text) {
  if (text == "OR") return Op::Or;
  if (text == "AND") return Op::And;
  if (text == "SAND") return Op::Sand;
  return std::nullopt;
}

/// Either an atomic goal or OP(g1, ..., gn) with n >= 2.
class GoalExpression {
 public:
  static GoalExpression atomic(Goal g) { return GoalExpression(std::nullopt, {std::move(g)}); }
  static GoalExpression composed(Op op, std::vector<Goal> goals) {
    if (goals.size() < 2) throw ModelError("composed goal expression needs arity >= 2");
    return GoalExpression(op, std::move(goals));
  }

  bool is_atomic() const { return !op_; }
  /// Operator of a composed expression; atomic expressions behave as unary OR.
  Op op() const { return op_.value_or(Op::Or); }
  const std::vector<Goal>& goals() const { return goals_; }
  std::size_t arity() const { return goals_.size(); }

  std::string to_string() const {
    auto goal_text = [](const Goal& g) { return g.pre + ">>" + g.post; };
    if (is_atomic()) return goal_text(goals_.front());
    std::string out = std::string(atc::to_string(*op_)) + "(";
    for (std::size_t i = 0; i < goals_.size(); ++i) out += (i ? ", " : "") + goal_text(goals_[i]);
    return out + ")";
  }

 private:
  GoalExpression(std::optional<Op> op, std::vector<Goal> goals) : op_(op), goals_(std::move(goals)) {}
  std::optional<Op> op_;
  std::vector<Goal> goals_;
};

/// Optional restrictions on a witness path's first and last state.
struct EndpointConstraint {
  std::optional<StateSet> start_in;
  std::optional<StateSet> start_not_in;
  std::optional<StateSet> end_in;
  std::optional<StateSet> end_not_in;

  StateSet restrict_start(StateSet s) const {
    if (start_in) s &= *start_in;
    if (start_not_in) s -= *start_not_in;
    return s;
  }
  StateSet restrict_end(StateSet s) const {
    if (end_in) s &= *end_in;
    if (end_not_in) s -= *end_not_in;
    return s;
  }
  bool admits(const Path& p) const {
    auto ok_start = (!start_in || start_in->contains(p.front())) && (!start_not_in || !start_not_in->contains(p.front()));
    auto ok_end = (!end_in || end_in->contains(p.back())) && (!end_not_in || !end_not_in->contains(p.back()));
    return ok_start && ok_end;
  }
};

inline bool path_satisfies_goal(const TransitionSystem& sys, const Path& path, const Goal& goal) {
  const auto& pre = sys.label(goal.pre);
  const auto& post = sys.label(goal.post);
  return pre.contains(path.front()) && post.contains(path.back());
}

namespace detail {

// Greedy left-to-right sweep: cut i is the earliest position at or after cut
// i-1 lying in λ(γ_i) ∩ λ(ι_{i+1}).
inline bool sand_member(const TransitionSystem& sys, const Path& path, const std::vector<Goal>& goals) {
  if (!sys.label(goals.front().pre).contains(path.front())) return false;
  if (!sys.label(goals.back().post).contains(path.back())) return false;
  std::size_t pos = 0;
  for (std::size_t i = 0; i + 1 < goals.size(); ++i) {
    const auto& gamma = sys.label(goals[i].post);
    const auto& next_iota = sys.label(goals[i + 1].pre);
    while (pos <= path.size() && !(gamma.contains(path[pos]) && next_iota.contains(path[pos]))) ++pos;
    if (pos > path.size()) return false;
  }
  return true;
}

// Widest anchoring per goal (earliest ι_i, latest γ_i at or after it), then
// a coverage check over all steps.
inline bool and_member(const TransitionSystem& sys, const Path& path, const std::vector<Goal>& goals) {
  std::vector<Anchoring> widest;
  widest.reserve(goals.size());
  for (const auto& g : goals) {
    const auto& pre = sys.label(g.pre);
    const auto& post = sys.label(g.post);
    std::optional<std::size_t> k;
    for (std::size_t i = 0; i <= path.size() && !k; ++i)
      if (pre.contains(path[i])) k = i;
    if (!k) return false;
    std::optional<std::size_t> l;
    for (std::size_t i = path.size() + 1; i-- > *k && !l;)
      if (post.contains(path[i])) l = i;
    if (!l) return false;
    widest.push_back({*k, *l});
  }
  return is_parallel_decomposition(path, widest);
}

}  // namespace detail

/// Membership of `path` in the path semantics of `expr`.
inline bool path_satisfies_expression(const TransitionSystem& sys, const Path& path, const GoalExpression& expr) {
  const auto& goals = expr.goals();
  for (const auto& g : goals) {
    sys.label(g.pre);
    sys.label(g.post);
  }
  switch (expr.op()) {
    case Op::Or:
      for (const auto& g : goals)
        if (path_satisfies_goal(sys, path, g)) return true;
      return false;
    case Op::Sand: return detail::sand_member(sys, path, goals);
    case Op::And: return detail::and_member(sys, path, goals);
  }
  return false;
}

}  // namespace atc
