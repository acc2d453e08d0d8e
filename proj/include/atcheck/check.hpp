#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <future>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "atcheck/ef.hpp"
#include "atcheck/error.hpp"
#include "atcheck/goal.hpp"
#include "atcheck/oracle.hpp"
#include "atcheck/path.hpp"
#include "atcheck/report.hpp"
#include "atcheck/system.hpp"
#include "atcheck/tree.hpp"
#include "atcheck/witness.hpp"

namespace atc {

enum class Engine { Exact, Oracle };

struct CheckOptions {
  std::size_t and_arity_cap = kDefaultAndArityCap;
  /// Candidate limit for the AND Over-Match path search; unlimited if unset.
  std::optional<std::size_t> over_and_path_budget;
  Engine engine = Engine::Exact;
  /// Oracle path-size budget; (2n - 1)·|states| if unset.
  std::optional<std::size_t> budget;
};

struct Verdict {
  bool holds = false;
  std::optional<Path> evidence;
  std::string engine;
  std::string detail;
};

namespace detail {

inline const char* nonempty_engine(const GoalExpression& expr) {
  if (expr.is_atomic()) return "reach";
  switch (expr.op()) {
    case Op::Or: return "reach";
    case Op::Sand: return "sand-forward";
    case Op::And: return "and-weak-order";
  }
  return "?";
}

inline StateSet singleton(const TransitionSystem& sys, StateIndex s) { return StateSet(sys.state_count(), {s}); }

inline Path path_between(const TransitionSystem& sys, const StateSet& from, const StateSet& to, SearchStats& stats) {
  auto seq = shortest_path(sys, from, to, 0, nullptr, &stats.states_explored);
  if (!seq) throw Error("internal: expected a connecting path");
  return Path(sys, std::move(*seq));
}

// ι ∧ ι_1 ∧ EF(γ_1 ∧ ι_2 ∧ EF(… EF(γ_n ∧ last)))
inline EfFormula sand_chain(const std::vector<Goal>& goals, std::optional<EfFormula> first, EfFormula last) {
  auto inner = EfFormula::conj(EfFormula::lit(goals.back().post), std::move(last));
  for (std::size_t i = goals.size() - 1; i-- > 0;)
    inner = EfFormula::conj(EfFormula::conj(EfFormula::lit(goals[i].post), EfFormula::lit(goals[i + 1].pre)),
                            EfFormula::ef(std::move(inner)));
  auto head = EfFormula::lit(goals.front().pre);
  if (first) head = EfFormula::conj(std::move(*first), std::move(head));
  return EfFormula::conj(std::move(head), EfFormula::ef(std::move(inner)));
}

inline EfFormula truth(const Goal& g) { return EfFormula::disj(EfFormula::lit(g.pre), EfFormula::neg(g.pre)); }

inline Verdict meet_exact(const TransitionSystem& sys, const Goal& goal, const GoalExpression& expr,
                          const CheckOptions& opts, SearchStats& stats) {
  const auto& iota = sys.label(goal.pre);
  const auto& gamma = sys.label(goal.post);
  const auto& goals = expr.goals();
  Verdict v;
  switch (expr.op()) {
    case Op::Or: {
      v.engine = "ef-or";
      std::optional<EfFormula> phi;
      for (const auto& g : goals) {
        auto term = EfFormula::conj(EfFormula::conj(EfFormula::lit(goal.pre), EfFormula::lit(g.pre)),
                                    EfFormula::ef(EfFormula::conj(EfFormula::lit(goal.post), EfFormula::lit(g.post))));
        phi = phi ? EfFormula::disj(std::move(*phi), std::move(term)) : std::move(term);
      }
      v.holds = !eval_ef(sys, *phi).empty();
      for (const auto& g : goals) {
        auto from = iota & sys.label(g.pre);
        auto to = gamma & sys.label(g.post);
        if (auto seq = shortest_path(sys, from, to, 0, nullptr, &stats.states_explored)) {
          v.evidence = Path(sys, std::move(*seq));
          break;
        }
      }
      break;
    }
    case Op::Sand: {
      v.engine = "ef-sand";
      auto phi = sand_chain(goals, EfFormula::lit(goal.pre), EfFormula::lit(goal.post));
      v.holds = !eval_ef(sys, phi).empty();
      EndpointConstraint c;
      c.start_in = iota;
      c.end_in = gamma;
      v.evidence = find_witness(sys, expr, c, {opts.and_arity_cap}, &stats);
      break;
    }
    case Op::And: {
      v.engine = "and-weak-order";
      EndpointConstraint c;
      c.start_in = iota;
      c.end_in = gamma;
      v.evidence = find_witness(sys, expr, c, {opts.and_arity_cap}, &stats);
      v.holds = v.evidence.has_value();
      break;
    }
  }
  if (v.holds != v.evidence.has_value()) throw Error("internal: Meet verdict and witness disagree");
  v.detail = v.holds ? "witness lies in both semantic sets" : "semantic sets are disjoint";
  return v;
}

inline Verdict under_exact(const TransitionSystem& sys, const Goal& goal, const GoalExpression& expr,
                           const CheckOptions& opts, SearchStats& stats) {
  const auto& iota = sys.label(goal.pre);
  const auto& gamma = sys.label(goal.post);
  const auto& goals = expr.goals();
  Verdict v;
  switch (expr.op()) {
    case Op::Or: {
      v.engine = "or-inclusion";
      for (std::size_t i = 0; i < goals.size() && !v.evidence; ++i) {
        const auto& pre = sys.label(goals[i].pre);
        const auto& post = sys.label(goals[i].post);
        auto bad_start = (pre & coreach(sys, post)) - iota;
        if (!bad_start.empty()) {
          v.evidence = path_between(sys, bad_start, post, stats);
          v.detail = "child " + std::to_string(i) + " starts outside the node precondition";
          break;
        }
        auto bad_end = (post & reach(sys, pre)) - gamma;
        if (!bad_end.empty()) {
          v.evidence = path_between(sys, pre, bad_end, stats);
          v.detail = "child " + std::to_string(i) + " ends outside the node postcondition";
        }
      }
      v.holds = !v.evidence;
      break;
    }
    case Op::Sand: {
      v.engine = "ef-sand";
      auto phi = EfFormula::disj(sand_chain(goals, EfFormula::neg(goal.pre), truth(goals.back())),
                                 sand_chain(goals, std::nullopt, EfFormula::neg(goal.post)));
      v.holds = eval_ef(sys, phi).empty();
      [[fallthrough]];
    }
    case Op::And: {
      if (expr.op() == Op::And) v.engine = "and-weak-order";
      EndpointConstraint c;
      c.start_not_in = iota;
      v.evidence = find_witness(sys, expr, c, {opts.and_arity_cap}, &stats);
      if (v.evidence) {
        v.detail = "refinement path starts outside the node precondition";
      } else {
        c = {};
        c.end_not_in = gamma;
        v.evidence = find_witness(sys, expr, c, {opts.and_arity_cap}, &stats);
        if (v.evidence) v.detail = "refinement path ends outside the node postcondition";
      }
      if (expr.op() == Op::And) v.holds = !v.evidence;
      break;
    }
  }
  if (v.holds == v.evidence.has_value()) throw Error("internal: Under-Match verdict and counterexample disagree");
  if (v.holds) v.detail = "every refinement path satisfies the node goal";
  return v;
}

// State sequence from G_0 to t ∈ R_stage whose greedy cut sweep is still in
// `stage` at t.
inline std::vector<StateIndex> sand_stage_path(const TransitionSystem& sys, const std::vector<StateSet>& cut,
                                               const std::vector<StateSet>& inter, const std::vector<StateSet>& avoid,
                                               const std::vector<StateSet>& region, std::size_t stage, StateIndex t);

// State sequence from G_0 to s ∈ G_level ending with the level-th cut at s.
inline std::vector<StateIndex> sand_cut_path(const TransitionSystem& sys, const std::vector<StateSet>& cut,
                                             const std::vector<StateSet>& inter, const std::vector<StateSet>& avoid,
                                             const std::vector<StateSet>& region, std::size_t level, StateIndex s) {
  if (level == 0) return {s};
  if (cut[level - 1].contains(s)) return sand_cut_path(sys, cut, inter, avoid, region, level - 1, s);
  for (auto p : sys.predecessors(s)) {
    if (!region[level - 1].contains(p)) continue;
    auto seq = sand_stage_path(sys, cut, inter, avoid, region, level, p);
    seq.push_back(s);
    return seq;
  }
  throw Error("internal: SAND Over-Match reconstruction lost a cut");
}

inline std::vector<StateIndex> sand_stage_path(const TransitionSystem& sys, const std::vector<StateSet>& cut,
                                               const std::vector<StateSet>& inter, const std::vector<StateSet>& avoid,
                                               const std::vector<StateSet>& region, std::size_t stage, StateIndex t) {
  auto seg = shortest_path(sys, cut[stage - 1] - inter[stage - 1], singleton(sys, t), 0, &avoid[stage - 1]);
  if (!seg) throw Error("internal: SAND Over-Match reconstruction lost a segment");
  auto seq = sand_cut_path(sys, cut, inter, avoid, region, stage - 1, seg->front());
  seq.insert(seq.end(), seg->begin() + 1, seg->end());
  return seq;
}

// Int_i = λ(γ_i) ∩ λ(ι_{i+1}); G_0 = λ(ι) ∩ λ(ι_1); R_i is what stage i
// reaches from G_{i-1} \ Int_i without touching Int_i, B_i = R_i ∩ λ(γ) and
// G_i = (G_{i-1} ∪ post(R_i)) ∩ Int_i.
inline std::optional<Path> sand_over_counterexample(const TransitionSystem& sys, const Goal& goal,
                                                    const std::vector<Goal>& goals, SearchStats& stats,
                                                    std::string& detail) {
  const auto& iota = sys.label(goal.pre);
  const auto& gamma = sys.label(goal.post);
  const auto n = goals.size();
  auto c1 = iota - sys.label(goals.front().pre);
  if (reach(sys, c1).intersects(gamma)) {
    detail = "a node path starts outside the first child precondition";
    return path_between(sys, c1, gamma, stats);
  }
  auto c2 = gamma - sys.label(goals.back().post);
  if (coreach(sys, c2).intersects(iota)) {
    detail = "a node path ends outside the last child postcondition";
    return path_between(sys, iota, c2, stats);
  }
  std::vector<StateSet> cut{iota & sys.label(goals.front().pre)};
  std::vector<StateSet> inter;
  std::vector<StateSet> avoid;
  std::vector<StateSet> region;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    inter.push_back(sys.label(goals[i].post) & sys.label(goals[i + 1].pre));
    avoid.push_back(inter.back().complement());
    region.push_back(reach_within(sys, cut.back() - inter.back(), avoid.back()));
    stats.states_explored += region.back().count();
    auto bad = region.back() & gamma;
    if (!bad.empty()) {
      detail = "a node path never reaches segment " + std::to_string(i + 2) + " of the sequence";
      return Path(sys, sand_stage_path(sys, cut, inter, avoid, region, i + 1, *bad.first()));
    }
    cut.push_back((cut.back() | post_set(sys, region.back())) & inter.back());
  }
  return std::nullopt;
}

inline Verdict over_exact(const TransitionSystem& sys, const Goal& goal, const GoalExpression& expr,
                          const CheckOptions& opts, SearchStats& stats) {
  const auto& iota = sys.label(goal.pre);
  const auto& gamma = sys.label(goal.post);
  const auto& goals = expr.goals();
  Verdict v;
  switch (expr.op()) {
    case Op::Or: {
      v.engine = "or-endpoint-pairs";
      std::vector<std::pair<const StateSet*, const StateSet*>> children;
      for (const auto& g : goals) children.emplace_back(&sys.label(g.pre), &sys.label(g.post));
      iota.for_each([&](StateIndex s) {
        if (v.evidence) return;
        auto r = reach(sys, singleton(sys, s));
        stats.states_explored += r.count();
        (r & gamma).for_each([&](StateIndex t) {
          if (v.evidence) return;
          bool covered = std::any_of(children.begin(), children.end(),
                                     [&](auto c) { return c.first->contains(s) && c.second->contains(t); });
          if (!covered) {
            v.evidence = path_between(sys, singleton(sys, s), singleton(sys, t), stats);
            v.detail = "no child goal connects " + sys.name(s) + " to " + sys.name(t);
          }
        });
      });
      break;
    }
    case Op::Sand:
      v.engine = "sand-int-gb";
      v.evidence = sand_over_counterexample(sys, goal, goals, stats, v.detail);
      break;
    case Op::And: {
      v.engine = "and-simple-path-dfs";
      if (goals.size() > opts.and_arity_cap) throw ArityCapExceeded(goals.size(), opts.and_arity_cap);
      std::vector<StateIndex> stack;
      std::vector<bool> on_path(sys.state_count(), false);
      auto dfs = [&](auto& self, StateIndex s) -> bool {
        stack.push_back(s);
        on_path[s] = true;
        if (gamma.contains(s)) {
          ++stats.paths_enumerated;
          if (opts.over_and_path_budget && stats.paths_enumerated > *opts.over_and_path_budget)
            throw SearchBudgetExhausted("AND Over-Match search exceeded " + std::to_string(*opts.over_and_path_budget) +
                                        " candidate paths");
          Path p(sys, stack);
          if (!path_satisfies_expression(sys, p, expr)) {
            v.evidence = std::move(p);
            return true;
          }
        }
        for (auto t : sys.successors(s))
          if (!on_path[t] && self(self, t)) return true;
        on_path[s] = false;
        stack.pop_back();
        return false;
      };
      iota.for_each([&](StateIndex s) {
        if (!v.evidence) dfs(dfs, s);
      });
      if (v.evidence) v.detail = "elementary node path admits no parallel decomposition";
      break;
    }
  }
  v.holds = !v.evidence;
  if (v.evidence &&
      !(path_satisfies_goal(sys, *v.evidence, goal) && !path_satisfies_expression(sys, *v.evidence, expr)))
    throw Error("internal: Over-Match counterexample does not re-verify");
  if (v.holds) v.detail = "every node path satisfies the refinement";
  return v;
}

inline std::size_t oracle_budget(const TransitionSystem& sys, const GoalExpression& expr, const CheckOptions& opts) {
  return opts.budget.value_or(witness_budget(sys, expr.arity()).max_transitions);
}

template <class F>
CheckReport timed(NodePath node, PropertyKind property, F&& body) {
  CheckReport r;
  r.node = std::move(node);
  r.property = property;
  auto t0 = std::chrono::steady_clock::now();
  body(r);
  r.stats.wall_time = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - t0);
  return r;
}

}  // namespace detail

/// ⟦expr⟧ ≠ ∅, with a witness when nonempty.
inline std::pair<bool, std::optional<Path>> check_nonempty(const TransitionSystem& sys, const GoalExpression& expr,
                                                           const CheckOptions& opts = {},
                                                           CheckStats* stats_out = nullptr) {
  CheckStats local;
  CheckStats& stats = stats_out ? *stats_out : local;
  if (opts.engine == Engine::Oracle) {
    for (const auto& g : expr.goals()) {
      sys.label(g.pre);
      sys.label(g.post);
    }
    auto budget = detail::oracle_budget(sys, expr, opts);
    stats.budget = budget;
    auto r = oracle_nonempty(sys, expr, {budget});
    stats.paths_enumerated += r.prefixes;
    return {r.path.has_value(), std::move(r.path)};
  }
  auto w = find_witness(sys, expr, {}, {opts.and_arity_cap}, &stats);
  return {w.has_value(), std::move(w)};
}

inline Verdict decide(const TransitionSystem& sys, const Goal& goal, const GoalExpression& expr, PropertyKind property,
                      const CheckOptions& opts, CheckStats& stats) {
  if (opts.engine == Engine::Oracle) {
    sys.label(goal.pre);
    sys.label(goal.post);
    for (const auto& g : expr.goals()) {
      sys.label(g.pre);
      sys.label(g.post);
    }
    auto budget = detail::oracle_budget(sys, expr, opts);
    stats.budget = budget;
    auto o = oracle_check(sys, goal, expr, property, {budget});
    stats.paths_enumerated += o.prefixes;
    Verdict v{o.holds, std::move(o.evidence), "oracle", "exhaustive search over bounded paths"};
    return v;
  }
  switch (property) {
    case PropertyKind::Meet: return detail::meet_exact(sys, goal, expr, opts, stats);
    case PropertyKind::UnderMatch: return detail::under_exact(sys, goal, expr, opts, stats);
    case PropertyKind::OverMatch: return detail::over_exact(sys, goal, expr, opts, stats);
    case PropertyKind::Match: {
      auto u = detail::under_exact(sys, goal, expr, opts, stats);
      if (!u.holds) {
        u.engine += "+over";
        u.detail = "Under-Match fails: " + u.detail;
        return u;
      }
      auto o = detail::over_exact(sys, goal, expr, opts, stats);
      o.engine = u.engine + "+" + o.engine;
      o.detail = o.holds ? "Under-Match and Over-Match hold" : "Over-Match fails: " + o.detail;
      return o;
    }
    case PropertyKind::Admissible: break;
  }
  throw ModelError("admissibility is decided per tree, not per refinement");
}

inline CheckReport check_property(const TransitionSystem& sys, const Goal& goal, const GoalExpression& expr,
                                  PropertyKind property, const CheckOptions& opts = {}, NodePath node = {}) {
  return detail::timed(std::move(node), property, [&](CheckReport& r) {
    auto v = decide(sys, goal, expr, property, opts, r.stats);
    r.holds = v.holds;
    r.evidence = std::move(v.evidence);
    r.engine = std::move(v.engine);
    r.detail = std::move(v.detail);
  });
}

inline CheckReport check_meet(const TransitionSystem& sys, const Goal& goal, const GoalExpression& expr,
                              const CheckOptions& opts = {}) {
  return check_property(sys, goal, expr, PropertyKind::Meet, opts);
}
inline CheckReport check_under(const TransitionSystem& sys, const Goal& goal, const GoalExpression& expr,
                               const CheckOptions& opts = {}) {
  return check_property(sys, goal, expr, PropertyKind::UnderMatch, opts);
}
inline CheckReport check_over(const TransitionSystem& sys, const Goal& goal, const GoalExpression& expr,
                              const CheckOptions& opts = {}) {
  return check_property(sys, goal, expr, PropertyKind::OverMatch, opts);
}
inline CheckReport check_match(const TransitionSystem& sys, const Goal& goal, const GoalExpression& expr,
                               const CheckOptions& opts = {}) {
  return check_property(sys, goal, expr, PropertyKind::Match, opts);
}

/// One report per node of the subtree at `base`, in preorder. A node holds
/// when (a) its goal is nonempty, (b) its refinement, if any, is nonempty
/// and (c) all children hold; `detail` names the first failing condition.
inline std::vector<CheckReport> check_admissible(const TransitionSystem& sys, const AttackTree& tree,
                                                 const CheckOptions& opts = {}, const NodePath& base = {}) {
  std::vector<CheckReport> out;
  auto walk = [&](auto& self, const AttackTree& t, NodePath at) -> bool {
    auto slot = out.size();
    out.emplace_back();
    bool children_ok = true;
    std::string first_bad;
    for (std::size_t i = 0; i < t.children.size(); ++i) {
      auto child = at;
      child.push_back(i);
      if (!self(self, t.children[i], child) && children_ok) {
        children_ok = false;
        first_bad = format_node_path(child);
      }
    }
    out[slot] = detail::timed(at, PropertyKind::Admissible, [&](CheckReport& r) {
      auto goal_expr = GoalExpression::atomic(t.goal);
      auto [goal_ok, goal_witness] = check_nonempty(sys, goal_expr, opts, &r.stats);
      r.engine = opts.engine == Engine::Oracle ? "oracle" : "reach";
      if (!goal_ok) {
        r.detail = "(a) node goal " + goal_expr.to_string() + " has empty semantics";
        return;
      }
      r.evidence = std::move(goal_witness);
      if (!t.is_leaf()) {
        std::vector<Goal> goals;
        for (const auto& c : t.children) goals.push_back(c.goal);
        auto expr = GoalExpression::composed(*t.op, std::move(goals));
        if (opts.engine == Engine::Exact) r.engine += std::string("+") + detail::nonempty_engine(expr);
        auto [ok, w] = check_nonempty(sys, expr, opts, &r.stats);
        if (!ok) {
          r.evidence.reset();
          r.detail = "(b) refinement " + expr.to_string() + " has empty semantics";
          return;
        }
        r.evidence = std::move(w);
      }
      if (!children_ok) {
        r.detail = "(c) subtree " + first_bad + " is not admissible";
        return;
      }
      r.holds = true;
      r.detail = t.is_leaf() ? "(a) holds" : "(a), (b) and (c) hold";
    });
    return out[slot].holds;
  };
  walk(walk, tree.at(base), base);
  return out;
}

/// Local check at a composed node. Leaves have no refinement and are rejected.
inline CheckReport check_local(const TransitionSystem& sys, const AttackTree& tree, const NodePath& node,
                               PropertyKind property, const CheckOptions& opts = {}) {
  if (property == PropertyKind::Admissible) {
    auto reports = check_admissible(sys, tree, opts, node);
    return reports.front();
  }
  auto [goal, expr] = expression_at(tree, node);
  if (!expr) throw ModelError("node " + format_node_path(node) + " is a leaf; local properties need a refinement");
  return check_property(sys, goal, *expr, property, opts, node);
}

/// One report per composed node in preorder; a leaf tree yields none.
/// With jobs > 1 nodes are checked concurrently; the order is unchanged.
inline std::vector<CheckReport> check_global(const TransitionSystem& sys, const AttackTree& tree,
                                             PropertyKind property, const CheckOptions& opts = {},
                                             std::size_t jobs = 1) {
  if (property == PropertyKind::Admissible) throw ModelError("admissibility is already a global property");
  auto nodes = composed_nodes(tree);
  std::vector<CheckReport> out(nodes.size());
  if (jobs <= 1) {
    for (std::size_t i = 0; i < nodes.size(); ++i) out[i] = check_local(sys, tree, nodes[i], property, opts);
    return out;
  }
  for (std::size_t start = 0; start < nodes.size(); start += jobs) {
    std::vector<std::future<CheckReport>> batch;
    for (std::size_t i = start; i < std::min(nodes.size(), start + jobs); ++i)
      batch.push_back(std::async(std::launch::async, [&, i] { return check_local(sys, tree, nodes[i], property, opts); }));
    for (std::size_t i = 0; i < batch.size(); ++i) out[start + i] = batch[i].get();
  }
  return out;
}

}  // namespace atc
