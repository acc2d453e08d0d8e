#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <utility>
#include <optional>
#include <vector>

#include "atcheck/error.hpp"
#include "atcheck/goal.hpp"
#include "atcheck/path.hpp"
#include "atcheck/system.hpp"

namespace atc {

inline constexpr std::size_t kDefaultAndArityCap = 4;

/// Work counters, deterministic for identical inputs.
struct SearchStats {
  std::size_t states_explored = 0;
  std::size_t weak_orders = 0;
  std::size_t paths_enumerated = 0;

  SearchStats& operator+=(const SearchStats& o) {
    states_explored += o.states_explored;
    weak_orders += o.weak_orders;
    paths_enumerated += o.paths_enumerated;
    return *this;
  }
};

struct WitnessOptions {
  std::size_t and_arity_cap = kDefaultAndArityCap;
};

namespace detail {

inline std::optional<Path> goal_witness(const TransitionSystem& sys, const Goal& g, const EndpointConstraint& c,
                                        SearchStats& stats) {
  auto starts = c.restrict_start(sys.label(g.pre));
  auto ends = c.restrict_end(sys.label(g.post));
  stats.states_explored += starts.count();
  auto seq = shortest_path(sys, starts, ends, 0, nullptr, &stats.states_explored);
  if (!seq) return std::nullopt;
  return stitch(std::vector<std::vector<StateIndex>>{*seq});
}

// Forward chaining S_1 = λ(ι_1), S_{i+1} = λ(ι_{i+1}) ∩ λ(γ_i) ∩ reach(S_i),
// closed by λ(γ_n) ∩ reach(S_n), with the constraint applied at both ends.
inline std::optional<Path> sand_witness(const TransitionSystem& sys, const std::vector<Goal>& goals,
                                        const EndpointConstraint& c, SearchStats& stats) {
  std::vector<StateSet> stage;
  stage.push_back(c.restrict_start(sys.label(goals.front().pre)));
  for (std::size_t i = 1; i < goals.size(); ++i) {
    auto r = reach(sys, stage.back());
    stats.states_explored += r.count();
    stage.push_back(sys.label(goals[i].pre) & sys.label(goals[i - 1].post) & r);
  }
  auto r = reach(sys, stage.back());
  stats.states_explored += r.count();
  auto last = c.restrict_end(sys.label(goals.back().post) & r);
  if (last.empty()) return std::nullopt;

  std::vector<std::vector<StateIndex>> segments(goals.size());
  StateIndex target = *last.first();
  for (std::size_t i = goals.size(); i-- > 0;) {
    auto seg = shortest_path(sys, stage[i], StateSet(sys.state_count(), {target}), 0);
    if (!seg) throw Error("internal: SAND reconstruction lost its path");
    target = seg->front();
    segments[i] = std::move(*seg);
  }
  return stitch(segments);
}

}  // namespace detail

/// Exact search for a path in ⟦and(goals)⟧ meeting `c`.
///
/// Builds weak orders of the 2n markers (k_1..k_n, l_1..l_n) block by block.
/// Each goal is unopened, open (k_i placed) or closed (l_i placed); a block
/// opens and/or closes goals, and k_i may share its block with l_i. Blocks
/// sit at strictly increasing path positions, so the gap after a block needs
/// an open goal to be covered. Feasibility is the forward filter
/// F_1 = allowed(B_1), F_{r+1} = allowed(B_{r+1}) ∩ reach(post(F_r)), where
/// allowed(B) intersects the labels of the markers in B. Failed
/// (status, filter) pairs are memoized. The first feasible order, in a fixed
/// goal-by-goal enumeration, is rebuilt backwards from shortest segments.
inline std::optional<Path> and_marker_search(const TransitionSystem& sys, const std::vector<Goal>& goals,
                                             const EndpointConstraint& c, const WitnessOptions& opts = {},
                                             SearchStats* stats_out = nullptr) {
  const std::size_t n = goals.size();
  if (n > opts.and_arity_cap) throw ArityCapExceeded(n, opts.and_arity_cap);
  SearchStats local;
  SearchStats& stats = stats_out ? *stats_out : local;

  std::vector<const StateSet*> pre;
  std::vector<const StateSet*> post;
  for (const auto& g : goals) {
    pre.push_back(&sys.label(g.pre));
    post.push_back(&sys.label(g.post));
    if (pre.back()->empty() || post.back()->empty()) return std::nullopt;
  }

  enum : unsigned char { kUnopened, kOpen, kClosed };
  std::vector<unsigned char> status(n, kUnopened);
  std::vector<StateSet> chain;
  std::set<std::pair<std::vector<unsigned char>, std::vector<StateIndex>>> failed;

  // Remaining markers must still be placeable strictly after `f`.
  auto viable = [&](const StateSet& f) {
    auto later = reach(sys, post_set(sys, f));
    for (std::size_t i = 0; i < n; ++i) {
      if (status[i] == kUnopened && !(pre[i]->intersects(later) && post[i]->intersects(later))) return false;
      if (status[i] == kOpen && !post[i]->intersects(later)) return false;
    }
    return true;
  };

  // Chooses the current block goal by goal, then moves on to the next block.
  auto fill = [&](auto& self, auto& block_fn, std::size_t i, StateSet allowed, bool placed) -> bool {
    if (allowed.empty()) return false;
    if (i == n) {
      if (!placed) return false;
      bool done = std::all_of(status.begin(), status.end(), [](unsigned char st) { return st == kClosed; });
      if (done) {
        allowed = c.restrict_end(std::move(allowed));
        if (allowed.empty()) return false;
        chain.push_back(std::move(allowed));
        return true;
      }
      if (std::none_of(status.begin(), status.end(), [](unsigned char st) { return st == kOpen; })) return false;
      chain.push_back(allowed);
      if (viable(allowed) && block_fn(block_fn, allowed)) return true;
      chain.pop_back();
      return false;
    }
    const auto before = status[i];
    if (self(self, block_fn, i + 1, allowed, placed)) return true;
    if (before == kUnopened) {
      status[i] = kOpen;
      if (self(self, block_fn, i + 1, allowed & *pre[i], true)) return true;
      status[i] = kClosed;
      if (self(self, block_fn, i + 1, allowed & *pre[i] & *post[i], true)) return true;
    } else if (before == kOpen) {
      status[i] = kClosed;
      if (self(self, block_fn, i + 1, allowed & *post[i], true)) return true;
    }
    status[i] = before;
    return false;
  };
  auto block = [&](auto& self, const StateSet& previous) -> bool {
    std::pair<std::vector<unsigned char>, std::vector<StateIndex>> key{status, previous.members()};
    if (failed.count(key)) return false;
    ++stats.weak_orders;
    auto base = reach(sys, post_set(sys, previous));
    stats.states_explored += base.count();
    if (fill(fill, self, 0, std::move(base), false)) return true;
    failed.insert(std::move(key));
    return false;
  };
  ++stats.weak_orders;
  if (!fill(fill, block, 0, c.restrict_start(sys.all_states()), false)) return std::nullopt;

  std::vector<std::vector<StateIndex>> segments(chain.size());
  StateIndex target = *chain.back().first();
  segments.back() = {target};
  for (std::size_t r = chain.size() - 1; r-- > 0;) {
    auto seg = shortest_path(sys, chain[r], StateSet(sys.state_count(), {target}), 1);
    if (!seg) throw Error("internal: AND reconstruction lost its path");
    target = seg->front();
    segments[r] = std::move(*seg);
  }
  if (chain.size() > 1) segments.pop_back();
  return stitch(segments);
}

/// Exact witness search: some path in ⟦expr⟧ that meets `c`, or none.
inline std::optional<Path> find_witness(const TransitionSystem& sys, const GoalExpression& expr,
                                        const EndpointConstraint& c = {}, const WitnessOptions& opts = {},
                                        SearchStats* stats_out = nullptr) {
  SearchStats local;
  SearchStats& stats = stats_out ? *stats_out : local;
  for (const auto& g : expr.goals()) {
    sys.label(g.pre);
    sys.label(g.post);
  }
  switch (expr.op()) {
    case Op::Or:
      for (const auto& g : expr.goals())
        if (auto w = detail::goal_witness(sys, g, c, stats)) return w;
      return std::nullopt;
    case Op::Sand: return detail::sand_witness(sys, expr.goals(), c, stats);
    case Op::And: return and_marker_search(sys, expr.goals(), c, opts, &stats);
  }
  return std::nullopt;
}

}  // namespace atc
