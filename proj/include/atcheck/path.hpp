#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "atcheck/error.hpp"
#include "atcheck/system.hpp"

namespace atc {

struct Anchoring;

/// Non-empty state sequence. size() counts transitions, so a single-state
/// path has size 0.
class Path {
 public:
  /// Validates every consecutive pair against `sys`.
  Path(const TransitionSystem& sys, std::vector<StateIndex> states) : states_(std::move(states)) {
    if (states_.empty()) throw ModelError("a path contains at least one state");
    for (auto s : states_)
      if (s >= sys.state_count()) throw ModelError("path references an undeclared state");
    for (std::size_t i = 0; i + 1 < states_.size(); ++i)
      if (!sys.has_transition(states_[i], states_[i + 1]))
        throw ModelError("no transition " + sys.name(states_[i]) + " -> " + sys.name(states_[i + 1]));
  }

  static Path single(StateIndex s) { return Path(std::vector<StateIndex>{s}); }

  std::size_t size() const { return states_.size() - 1; }
  StateIndex operator[](std::size_t i) const { return states_.at(i); }
  StateIndex front() const { return states_.front(); }
  StateIndex back() const { return states_.back(); }
  std::span<const StateIndex> states() const { return states_; }

  bool is_elementary() const {
    std::vector<StateIndex> sorted(states_);
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  }

  std::string to_string(const TransitionSystem& sys, const char* sep = " -> ") const {
    std::string out;
    for (std::size_t i = 0; i < states_.size(); ++i) {
      if (i) out += sep;
      out += sys.name(states_[i]);
    }
    return out;
  }

  friend auto operator<=>(const Path&, const Path&) = default;
  friend bool operator==(const Path&, const Path&) = default;

 private:
  explicit Path(std::vector<StateIndex> states) : states_(std::move(states)) {}

  friend Path concat(std::span<const Path> paths);
  friend Path factor(const Path& path, Anchoring where);
  friend Path remove_cycles(const Path& path);
  friend Path stitch(std::span<const std::vector<StateIndex>> segments);

  std::vector<StateIndex> states_;
};

/// Interval [k, l] of positions in a host path.
struct Anchoring {
  std::size_t k = 0;
  std::size_t l = 0;
  friend bool operator==(const Anchoring&, const Anchoring&) = default;
};

inline void check_anchoring(const Path& path, Anchoring a) {
  if (a.k > a.l || a.l > path.size())
    throw ModelError("anchoring [" + std::to_string(a.k) + "," + std::to_string(a.l) + "] out of range for path of size " +
                     std::to_string(path.size()));
}

/// Joins paths end-to-start; consecutive paths must share the junction state.
inline Path concat(std::span<const Path> paths) {
  if (paths.empty()) throw ModelError("concatenation of zero paths");
  std::vector<StateIndex> out(paths.front().states_);
  for (std::size_t i = 1; i < paths.size(); ++i) {
    if (paths[i].front() != out.back()) throw ModelError("concatenation endpoint mismatch at operand " + std::to_string(i));
    out.insert(out.end(), paths[i].states_.begin() + 1, paths[i].states_.end());
  }
  return Path(std::move(out));
}

inline Path factor(const Path& path, Anchoring where) {
  check_anchoring(path, where);
  return Path(std::vector<StateIndex>(path.states_.begin() + static_cast<std::ptrdiff_t>(where.k),
                                      path.states_.begin() + static_cast<std::ptrdiff_t>(where.l) + 1));
}

/// Repeatedly removes the leftmost cycle, choosing the longest one among
/// cycles that start at the same position. Endpoints are preserved.
inline Path remove_cycles(const Path& path) {
  const auto& seq = path.states_;
  std::vector<std::size_t> last(*std::max_element(seq.begin(), seq.end()) + 1, 0);
  for (std::size_t i = 0; i < seq.size(); ++i) last[seq[i]] = i;
  std::vector<StateIndex> out;
  for (std::size_t pos = 0; pos < seq.size(); pos = last[seq[pos]] + 1) out.push_back(seq[pos]);
  return Path(std::move(out));
}

/// Concatenates raw state segments produced by the search engines, which
/// guarantee each segment is a valid path and junctions match.
inline Path stitch(std::span<const std::vector<StateIndex>> segments) {
  std::vector<StateIndex> out;
  for (const auto& seg : segments) {
    if (seg.empty()) continue;
    if (out.empty())
      out = seg;
    else {
      if (out.back() != seg.front()) throw ModelError("segment junction mismatch");
      out.insert(out.end(), seg.begin() + 1, seg.end());
    }
  }
  if (out.empty()) throw ModelError("stitching produced an empty path");
  return Path(std::move(out));
}

/// True iff every step [j, j+1] of `path` lies inside some anchoring.
/// Vacuously true for size-0 paths.
inline bool is_parallel_decomposition(const Path& path, std::span<const Anchoring> anchorings) {
  const auto n = path.size();
  std::vector<int> delta(n + 1, 0);
  for (auto a : anchorings) {
    check_anchoring(path, a);
    if (a.k < a.l) {
      ++delta[a.k];
      --delta[a.l];
    }
  }
  int open = 0;
  for (std::size_t j = 0; j < n; ++j) {
    open += delta[j];
    if (open <= 0) return false;
  }
  return true;
}

}  // namespace atc
