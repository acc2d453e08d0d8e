#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "atcheck/error.hpp"
#include "atcheck/state_set.hpp"

namespace atc {

using Edge = std::pair<StateIndex, StateIndex>;

/// Finite transition system: named states interned to dense indices, a
/// transition relation and a proposition labeling. Immutable once built.
///
/// Left-totality is not enforced; sink states are allowed and reported by
/// `sink_states()`.
class TransitionSystem {
 public:
  TransitionSystem() = default;

  TransitionSystem(std::vector<std::string> names, std::vector<Edge> edges,
                   std::map<std::string, StateSet> labels)
      : names_(std::move(names)), labels_(std::move(labels)) {
    for (StateIndex i = 0; i < names_.size(); ++i) {
      if (!index_.emplace(names_[i], i).second) throw ModelError("duplicate state id '" + names_[i] + "'");
    }
    succ_.assign(names_.size(), {});
    pred_.assign(names_.size(), {});
    succ_bits_.assign(names_.size(), StateSet(names_.size()));
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (auto [from, to] : edges) {
      if (from >= names_.size() || to >= names_.size())
        throw ModelError("transition references an undeclared state index");
      succ_[from].push_back(to);
      pred_[to].push_back(from);
      succ_bits_[from].insert(to);
    }
    for (auto& p : pred_) std::sort(p.begin(), p.end());
    edge_count_ = edges.size();
    for (auto& [name, set] : labels_) {
      if (set.universe() != names_.size())
        throw ModelError("labeling of '" + name + "' is not over the system's states");
    }
  }

  std::size_t state_count() const { return names_.size(); }
  std::size_t transition_count() const { return edge_count_; }
  /// |states| + |transitions|.
  std::size_t size() const { return state_count() + transition_count(); }

  const std::string& name(StateIndex s) const { return names_.at(s); }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<StateIndex> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  StateIndex index_of(const std::string& name) const {
    auto s = find(name);
    if (!s) throw ModelError("unknown state id '" + name + "'");
    return *s;
  }

  std::span<const StateIndex> successors(StateIndex s) const { return succ_.at(s); }
  std::span<const StateIndex> predecessors(StateIndex s) const { return pred_.at(s); }
  bool has_transition(StateIndex from, StateIndex to) const { return succ_bits_.at(from).contains(to); }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (StateIndex s = 0; s < succ_.size(); ++s)
      for (auto t : succ_[s]) out.emplace_back(s, t);
    return out;
  }

  bool has_label(const std::string& prop) const { return labels_.count(prop) != 0; }
  const StateSet& label(const std::string& prop) const {
    auto it = labels_.find(prop);
    if (it == labels_.end()) throw UnknownProposition(prop);
    return it->second;
  }
  const std::map<std::string, StateSet>& labels() const { return labels_; }

  StateSet empty_set() const { return StateSet(state_count()); }
  StateSet all_states() const { return StateSet::full(state_count()); }

  std::vector<StateIndex> sink_states() const {
    std::vector<StateIndex> out;
    for (StateIndex s = 0; s < succ_.size(); ++s)
      if (succ_[s].empty()) out.push_back(s);
    return out;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, StateIndex> index_;
  std::vector<std::vector<StateIndex>> succ_;
  std::vector<std::vector<StateIndex>> pred_;
  std::vector<StateSet> succ_bits_;
  std::map<std::string, StateSet> labels_;
  std::size_t edge_count_ = 0;
};

/// Builds a system from external (string) identifiers. Every state without
/// an outgoing transition is appended to `warnings` when given.
inline TransitionSystem build_system(std::span<const std::string> states,
                                     std::span<const std::pair<std::string, std::string>> transitions,
                                     const std::map<std::string, std::vector<std::string>>& labeling,
                                     std::vector<std::string>* warnings = nullptr) {
  std::vector<std::string> names(states.begin(), states.end());
  std::unordered_map<std::string, StateIndex> index;
  for (StateIndex i = 0; i < names.size(); ++i)
    if (!index.emplace(names[i], i).second) throw ModelError("duplicate state id '" + names[i] + "'");
  auto lookup = [&](const std::string& id, const char* what) {
    auto it = index.find(id);
    if (it == index.end()) throw ModelError(std::string(what) + " references undeclared state '" + id + "'");
    return it->second;
  };
  std::vector<Edge> edges;
  for (const auto& [from, to] : transitions) edges.emplace_back(lookup(from, "transition"), lookup(to, "transition"));
  std::map<std::string, StateSet> labels;
  for (const auto& [prop, members] : labeling) {
    StateSet set(names.size());
    for (const auto& id : members) set.insert(lookup(id, "label"));
    labels.emplace(prop, std::move(set));
  }
  TransitionSystem system(std::move(names), std::move(edges), std::move(labels));
  if (warnings) {
    auto sinks = system.sink_states();
    if (!sinks.empty()) {
      std::string msg = "states without outgoing transition (relation is not left-total):";
      for (auto s : sinks) msg += " " + system.name(s);
      warnings->push_back(std::move(msg));
    }
  }
  return system;
}

/// Direct successors of `from`.
inline StateSet post_set(const TransitionSystem& sys, const StateSet& from) {
  StateSet out = sys.empty_set();
  from.for_each([&](StateIndex s) {
    for (auto t : sys.successors(s)) out.insert(t);
  });
  return out;
}

/// Direct predecessors of `to`.
inline StateSet pre_set(const TransitionSystem& sys, const StateSet& to) {
  StateSet out = sys.empty_set();
  to.for_each([&](StateIndex s) {
    for (auto t : sys.predecessors(s)) out.insert(t);
  });
  return out;
}

namespace detail {

template <typename Next>
StateSet closure(const TransitionSystem& sys, const StateSet& seed, const StateSet* within, Next&& next) {
  StateSet seen = sys.empty_set();
  std::vector<StateIndex> stack;
  seed.for_each([&](StateIndex s) {
    if (within && !within->contains(s)) return;
    seen.insert(s);
    stack.push_back(s);
  });
  while (!stack.empty()) {
    auto s = stack.back();
    stack.pop_back();
    for (auto t : next(s)) {
      if (seen.contains(t) || (within && !within->contains(t))) continue;
      seen.insert(t);
      stack.push_back(t);
    }
  }
  return seen;
}

}  // namespace detail

/// States reachable from `from` by a path of size >= 0 (reflexive).
inline StateSet reach(const TransitionSystem& sys, const StateSet& from) {
  return detail::closure(sys, from, nullptr, [&](StateIndex s) { return sys.successors(s); });
}

/// States from which `to` is reachable (reflexive).
inline StateSet coreach(const TransitionSystem& sys, const StateSet& to) {
  return detail::closure(sys, to, nullptr, [&](StateIndex s) { return sys.predecessors(s); });
}

/// `reach` in the subsystem induced by `within`; seeds outside it are dropped.
inline StateSet reach_within(const TransitionSystem& sys, const StateSet& from, const StateSet& within) {
  return detail::closure(sys, from, &within, [&](StateIndex s) { return sys.successors(s); });
}

/// Subsystem on the states outside `forbidden`, re-indexed in original order.
/// The result may have sinks; it is meant for reachability queries.
inline TransitionSystem restrict(const TransitionSystem& sys, const StateSet& forbidden) {
  std::vector<StateIndex> remap(sys.state_count(), 0);
  std::vector<std::string> names;
  for (StateIndex s = 0; s < sys.state_count(); ++s) {
    if (forbidden.contains(s)) continue;
    remap[s] = static_cast<StateIndex>(names.size());
    names.push_back(sys.name(s));
  }
  std::vector<Edge> edges;
  for (auto [a, b] : sys.edges())
    if (!forbidden.contains(a) && !forbidden.contains(b)) edges.emplace_back(remap[a], remap[b]);
  std::map<std::string, StateSet> labels;
  for (const auto& [prop, set] : sys.labels()) {
    StateSet kept(names.size());
    set.for_each([&](StateIndex s) {
      if (!forbidden.contains(s)) kept.insert(remap[s]);
    });
    labels.emplace(prop, std::move(kept));
  }
  return TransitionSystem(std::move(names), std::move(edges), std::move(labels));
}

/// Breadth-first shortest state sequence from some state of `from` to some
/// state of `to` with at least `min_steps` (0 or 1) transitions, staying
/// inside `within` when given. Ties break on lowest state index.
inline std::optional<std::vector<StateIndex>> shortest_path(const TransitionSystem& sys, const StateSet& from,
                                                            const StateSet& to, unsigned min_steps = 0,
                                                            const StateSet* within = nullptr,
                                                            std::size_t* explored = nullptr) {
  constexpr StateIndex kNone = static_cast<StateIndex>(-1);
  const auto n = sys.state_count();
  std::vector<StateIndex> parent(n, kNone);
  std::vector<bool> seen(n, false);
  std::deque<StateIndex> queue;
  auto inside = [&](StateIndex s) { return within == nullptr || within->contains(s); };
  auto unwind = [&](StateIndex end, std::optional<StateIndex> origin) {
    std::vector<StateIndex> seq{end};
    for (auto cur = end; parent[cur] != kNone; cur = parent[cur]) seq.push_back(parent[cur]);
    if (origin) seq.push_back(*origin);
    std::reverse(seq.begin(), seq.end());
    return seq;
  };
  if (min_steps == 0) {
    std::optional<StateIndex> hit;
    from.for_each([&](StateIndex s) {
      if (!inside(s)) return;
      if (!hit && to.contains(s)) hit = s;
      seen[s] = true;
      queue.push_back(s);
    });
    if (hit) return std::vector<StateIndex>{*hit};
  } else {
    // Seed with the successors of `from` so that `from` states stay revisitable.
    std::optional<std::pair<StateIndex, StateIndex>> hit;
    std::vector<StateIndex> origin(n, kNone);
    from.for_each([&](StateIndex s) {
      if (!inside(s)) return;
      for (auto t : sys.successors(s)) {
        if (seen[t] || !inside(t)) continue;
        seen[t] = true;
        origin[t] = s;
        queue.push_back(t);
        if (!hit && to.contains(t)) hit = std::make_pair(s, t);
      }
    });
    if (hit) return std::vector<StateIndex>{hit->first, hit->second};
    // Wrap BFS from the seeded layer; roots carry their origin.
    while (!queue.empty()) {
      auto s = queue.front();
      queue.pop_front();
      if (explored) ++*explored;
      for (auto t : sys.successors(s)) {
        if (seen[t] || !inside(t)) continue;
        seen[t] = true;
        parent[t] = s;
        if (to.contains(t)) {
          auto seq = unwind(t, std::nullopt);
          seq.insert(seq.begin(), origin[seq.front()]);
          return seq;
        }
        queue.push_back(t);
      }
    }
    return std::nullopt;
  }
  while (!queue.empty()) {
    auto s = queue.front();
    queue.pop_front();
    if (explored) ++*explored;
    for (auto t : sys.successors(s)) {
      if (seen[t] || !inside(t)) continue;
      seen[t] = true;
      parent[t] = s;
      if (to.contains(t)) return unwind(t, std::nullopt);
      queue.push_back(t);
    }
  }
  return std::nullopt;
}

}  // namespace atc
