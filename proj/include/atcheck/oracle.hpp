#pragma once

// Brute-force reference engine. Nothing here calls the optimized membership
// checks or search engines; it only reads the successor lists and labels.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "atcheck/goal.hpp"
#include "atcheck/path.hpp"
#include "atcheck/report.hpp"
#include "atcheck/system.hpp"

namespace atc {

struct PathBudget {
  std::size_t max_transitions = 0;
};

/// (2n - 1)·|states|: every nonempty semantic set has a member within this
/// size that keeps the endpoints of any given member.
inline PathBudget witness_budget(const TransitionSystem& sys, std::size_t arity) {
  return {(2 * std::max<std::size_t>(arity, 1) - 1) * sys.state_count()};
}

/// Every path of size <= budget exactly once, shortest first, then
/// lexicographically by state index.
class PathStream {
 public:
  PathStream(const TransitionSystem& sys, PathBudget budget) : sys_(&sys), budget_(budget) {}

  std::optional<Path> next() {
    while (!done_) {
      if (frames_.empty()) {
        if (root_ == sys_->state_count()) {
          if (!found_at_length_ || length_ == budget_.max_transitions) {
            done_ = true;
            break;
          }
          ++length_;
          root_ = 0;
          found_at_length_ = false;
          continue;
        }
        frames_.push_back({root_++, 0});
      } else {
        auto& top = frames_.back();
        auto succ = sys_->successors(top.state);
        if (top.child == succ.size()) {
          frames_.pop_back();
          continue;
        }
        frames_.push_back({succ[top.child++], 0});
      }
      if (frames_.size() == length_ + 1) {
        std::vector<StateIndex> seq;
        for (const auto& f : frames_) seq.push_back(f.state);
        frames_.pop_back();
        found_at_length_ = true;
        return Path(*sys_, std::move(seq));
      }
    }
    return std::nullopt;
  }

 private:
  struct Frame {
    StateIndex state;
    std::size_t child;
  };
  const TransitionSystem* sys_;
  PathBudget budget_;
  std::size_t length_ = 0;
  StateIndex root_ = 0;
  bool found_at_length_ = false;
  bool done_ = false;
  std::vector<Frame> frames_;
};

inline PathStream enumerate_paths(const TransitionSystem& sys, PathBudget budget) { return PathStream(sys, budget); }

namespace oracle_detail {

inline bool goal_member(const TransitionSystem& sys, const Path& p, const Goal& g) {
  return sys.label(g.pre).contains(p.front()) && sys.label(g.post).contains(p.back());
}

inline bool goal_member(const TransitionSystem& sys, const Path& p, std::size_t from, std::size_t to, const Goal& g) {
  return sys.label(g.pre).contains(p[from]) && sys.label(g.post).contains(p[to]);
}

// Set concatenation: some split point j with π[from, j] in the i-th goal and
// π[j, end] in the concatenation of the remaining goals.
inline bool sand_split(const TransitionSystem& sys, const Path& p, const std::vector<Goal>& goals, std::size_t i,
                       std::size_t from) {
  if (i + 1 == goals.size()) return goal_member(sys, p, from, p.size(), goals[i]);
  for (std::size_t j = from; j <= p.size(); ++j)
    if (goal_member(sys, p, from, j, goals[i]) && sand_split(sys, p, goals, i + 1, j)) return true;
  return false;
}

// Tries every tuple of anchorings, one per goal, and checks step coverage.
inline bool and_tuples(const TransitionSystem& sys, const Path& p, const std::vector<Goal>& goals) {
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> candidates(goals.size());
  for (std::size_t i = 0; i < goals.size(); ++i) {
    for (std::size_t k = 0; k <= p.size(); ++k)
      for (std::size_t l = k; l <= p.size(); ++l)
        if (goal_member(sys, p, k, l, goals[i])) candidates[i].emplace_back(k, l);
    if (candidates[i].empty()) return false;
  }
  std::vector<std::pair<std::size_t, std::size_t>> chosen(goals.size());
  auto covered = [&] {
    for (std::size_t j = 0; j < p.size(); ++j) {
      bool hit = false;
      for (auto [k, l] : chosen) hit = hit || (k <= j && j + 1 <= l);
      if (!hit) return false;
    }
    return true;
  };
  auto pick = [&](auto& self, std::size_t i) -> bool {
    if (i == goals.size()) return covered();
    for (auto c : candidates[i]) {
      chosen[i] = c;
      if (self(self, i + 1)) return true;
    }
    return false;
  };
  return pick(pick, 0);
}

}  // namespace oracle_detail

/// Membership decided straight from the semantic definitions.
inline bool oracle_member(const TransitionSystem& sys, const Path& p, const GoalExpression& expr) {
  const auto& goals = expr.goals();
  switch (expr.op()) {
    case Op::Or:
      return std::any_of(goals.begin(), goals.end(), [&](const Goal& g) { return oracle_detail::goal_member(sys, p, g); });
    case Op::Sand: return oracle_detail::sand_split(sys, p, goals, 0, 0);
    case Op::And: return oracle_detail::and_tuples(sys, p, goals);
  }
  return false;
}

/// Every member of ⟦expr⟧ of size <= budget, in stream order.
inline std::vector<Path> oracle_semantics(const TransitionSystem& sys, const GoalExpression& expr, PathBudget budget) {
  std::vector<Path> out;
  auto stream = enumerate_paths(sys, budget);
  while (auto p = stream.next())
    if (oracle_member(sys, *p, expr)) out.push_back(std::move(*p));
  return out;
}

namespace oracle_detail {

// Per-prefix summary from which membership of every extension follows.
// Atomic/OR: which pre-labels hold at the first state. SAND: which segment
// indices the prefix can currently be inside. AND: the set of reachable
// interval status vectors (0 = not opened, 1 = open, 2 = closed), encoded
// in base 3. Together with the last state this is a right congruence.
class Tracker {
 public:
  Tracker(const TransitionSystem& sys, const GoalExpression& expr) : sys_(&sys), expr_(&expr) {
    for (const auto& g : expr.goals()) {
      pre_.push_back(&sys.label(g.pre));
      post_.push_back(&sys.label(g.post));
    }
  }

  std::vector<std::uint64_t> start(StateIndex s) const {
    const auto n = pre_.size();
    switch (expr_->op()) {
      case Op::Or: {
        std::uint64_t flags = 0;
        for (std::size_t i = 0; i < n; ++i)
          if (pre_[i]->contains(s)) flags |= std::uint64_t{1} << i;
        return {flags};
      }
      case Op::Sand: return {pre_[0]->contains(s) ? sand_close(1, s) : 0};
      case Op::And: return and_actions({0}, s);
    }
    return {};
  }

  std::vector<std::uint64_t> step(const std::vector<std::uint64_t>& sum, StateIndex t) const {
    switch (expr_->op()) {
      case Op::Or: return sum;
      case Op::Sand: return {sum[0] ? sand_close(sum[0], t) : 0};
      case Op::And: {
        std::vector<std::uint64_t> open;
        for (auto c : sum)
          if (has_open(c)) open.push_back(c);
        return and_actions(open, t);
      }
    }
    return {};
  }

  bool accepts(const std::vector<std::uint64_t>& sum, StateIndex last) const {
    const auto n = pre_.size();
    switch (expr_->op()) {
      case Op::Or:
        for (std::size_t i = 0; i < n; ++i)
          if (((sum[0] >> i) & 1U) && post_[i]->contains(last)) return true;
        return false;
      case Op::Sand: return ((sum[0] >> (n - 1)) & 1U) && post_[n - 1]->contains(last);
      case Op::And: return std::binary_search(sum.begin(), sum.end(), all_closed());
    }
    return false;
  }

 private:
  // Bit j-1 set: inside segment j. A state in λ(γ_j) ∩ λ(ι_{j+1}) may cut.
  std::uint64_t sand_close(std::uint64_t mask, StateIndex s) const {
    for (std::size_t j = 0; j + 1 < pre_.size(); ++j)
      if (((mask >> j) & 1U) && post_[j]->contains(s) && pre_[j + 1]->contains(s)) mask |= std::uint64_t{1} << (j + 1);
    return mask;
  }

  std::uint64_t digit(std::uint64_t c, std::size_t i) const {
    for (std::size_t k = 0; k < i; ++k) c /= 3;
    return c % 3;
  }
  bool has_open(std::uint64_t c) const {
    for (std::size_t i = 0; i < pre_.size(); ++i)
      if (digit(c, i) == 1) return true;
    return false;
  }
  std::uint64_t all_closed() const {
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < pre_.size(); ++i) c = c * 3 + 2;
    return c;
  }

  // Each goal may open and/or close its interval at the current position.
  std::vector<std::uint64_t> and_actions(const std::vector<std::uint64_t>& configs, StateIndex s) const {
    std::set<std::uint64_t> out;
    const auto n = pre_.size();
    for (auto c : configs) {
      std::vector<std::uint64_t> partial{0};
      std::uint64_t weight = 1;
      for (std::size_t i = 0; i < n; ++i, weight *= 3) {
        std::vector<std::uint64_t> options;
        switch (digit(c, i)) {
          case 0:
            options.push_back(0);
            if (pre_[i]->contains(s)) {
              options.push_back(1);
              if (post_[i]->contains(s)) options.push_back(2);
            }
            break;
          case 1:
            options.push_back(1);
            if (post_[i]->contains(s)) options.push_back(2);
            break;
          default: options.push_back(2);
        }
        std::vector<std::uint64_t> next;
        for (auto p : partial)
          for (auto o : options) next.push_back(p + o * weight);
        partial = std::move(next);
      }
      out.insert(partial.begin(), partial.end());
    }
    return {out.begin(), out.end()};
  }

  const TransitionSystem* sys_;
  const GoalExpression* expr_;
  std::vector<const StateSet*> pre_;
  std::vector<const StateSet*> post_;
};

}  // namespace oracle_detail

struct OracleResult {
  std::optional<Path> path;
  std::size_t prefixes = 0;
};

/// Shortest path of size <= budget whose membership pattern in ⟦goal⟧ and
/// ⟦expr⟧ satisfies `want(in_goal, in_expr)`. Paths are explored level by
/// level; a prefix is dropped when an earlier prefix ended in the same state
/// with the same summary, since both have identical extensions.
inline OracleResult oracle_find(const TransitionSystem& sys, const Goal& goal, const GoalExpression& expr,
                                const std::function<bool(bool, bool)>& want, PathBudget budget) {
  const oracle_detail::Tracker tracker(sys, expr);
  const auto& pre = sys.label(goal.pre);
  const auto& post = sys.label(goal.post);
  struct Prefix {
    std::vector<StateIndex> states;
    bool goal_start;
    std::vector<std::uint64_t> summary;
  };
  std::set<std::vector<std::uint64_t>> seen;
  auto key = [](const Prefix& p) {
    std::vector<std::uint64_t> k{p.states.back(), p.goal_start ? 1U : 0U};
    k.insert(k.end(), p.summary.begin(), p.summary.end());
    return k;
  };
  OracleResult result;
  std::vector<Prefix> frontier;
  for (StateIndex s = 0; s < sys.state_count(); ++s) {
    Prefix p{{s}, pre.contains(s), tracker.start(s)};
    if (seen.insert(key(p)).second) frontier.push_back(std::move(p));
  }
  for (std::size_t length = 0;; ++length) {
    for (const auto& p : frontier) {
      ++result.prefixes;
      bool in_goal = p.goal_start && post.contains(p.states.back());
      bool in_expr = tracker.accepts(p.summary, p.states.back());
      if (want(in_goal, in_expr)) {
        result.path = Path(sys, p.states);
        return result;
      }
    }
    if (length == budget.max_transitions || frontier.empty()) return result;
    std::vector<Prefix> next;
    for (const auto& p : frontier) {
      for (auto t : sys.successors(p.states.back())) {
        Prefix q{p.states, p.goal_start, tracker.step(p.summary, t)};
        q.states.push_back(t);
        if (seen.insert(key(q)).second) next.push_back(std::move(q));
      }
    }
    frontier = std::move(next);
  }
}

/// Same query answered by plain enumeration and definitional membership;
/// exponential, meant for small budgets.
inline OracleResult oracle_find_naive(const TransitionSystem& sys, const Goal& goal, const GoalExpression& expr,
                                      const std::function<bool(bool, bool)>& want, PathBudget budget) {
  OracleResult result;
  auto stream = enumerate_paths(sys, budget);
  while (auto p = stream.next()) {
    ++result.prefixes;
    if (want(oracle_detail::goal_member(sys, *p, goal), oracle_member(sys, *p, expr))) {
      result.path = std::move(p);
      return result;
    }
  }
  return result;
}

struct OracleVerdict {
  bool holds = false;
  std::optional<Path> evidence;
  std::size_t prefixes = 0;
};

/// Def.-level verdict of `property` for node goal `goal` refined by `expr`,
/// over paths of size <= budget. For Admissible only the node-local
/// conditions (goal and refinement nonempty) are decided.
inline OracleVerdict oracle_check(const TransitionSystem& sys, const Goal& goal, const GoalExpression& expr,
                                  PropertyKind property, PathBudget budget, bool naive = false) {
  auto find = [&](std::function<bool(bool, bool)> want) {
    return naive ? oracle_find_naive(sys, goal, expr, want, budget) : oracle_find(sys, goal, expr, want, budget);
  };
  OracleVerdict v;
  auto exists = [&](std::function<bool(bool, bool)> want) {
    auto r = find(std::move(want));
    v.prefixes += r.prefixes;
    return r.path;
  };
  switch (property) {
    case PropertyKind::Admissible: {
      auto in_goal = exists([](bool g, bool) { return g; });
      auto in_expr = in_goal ? exists([](bool, bool e) { return e; }) : std::nullopt;
      v.holds = in_goal && in_expr;
      v.evidence = in_expr;
      return v;
    }
    case PropertyKind::Meet:
      v.evidence = exists([](bool g, bool e) { return g && e; });
      v.holds = v.evidence.has_value();
      return v;
    case PropertyKind::UnderMatch:
      v.evidence = exists([](bool g, bool e) { return e && !g; });
      v.holds = !v.evidence;
      return v;
    case PropertyKind::OverMatch:
      v.evidence = exists([](bool g, bool e) { return g && !e; });
      v.holds = !v.evidence;
      return v;
    case PropertyKind::Match:
      v.evidence = exists([](bool g, bool e) { return e && !g; });
      if (!v.evidence) v.evidence = exists([](bool g, bool e) { return g && !e; });
      v.holds = !v.evidence;
      return v;
  }
  return v;
}

/// Nonemptiness of ⟦expr⟧ within the budget.
inline OracleResult oracle_nonempty(const TransitionSystem& sys, const GoalExpression& expr, PathBudget budget) {
  const auto& g = expr.goals().front();
  return oracle_find(sys, g, expr, [](bool, bool e) { return e; }, budget);
}

}  // namespace atc
