#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>

#include "atcheck/path.hpp"
#include "atcheck/tree.hpp"
#include "atcheck/witness.hpp"

namespace atc {

enum class PropertyKind { Admissible, Meet, UnderMatch, OverMatch, Match };

inline const char* to_string(PropertyKind p) {
  switch (p) {
    case PropertyKind::Admissible: return "admissible";
    case PropertyKind::Meet: return "meet";
    case PropertyKind::UnderMatch: return "under";
    case PropertyKind::OverMatch: return "over";
    case PropertyKind::Match: return "match";
  }
  return "?";
}

inline std::optional<PropertyKind> parse_property(const std::string& s) {
  if (s == "admissible") return PropertyKind::Admissible;
  if (s == "meet") return PropertyKind::Meet;
  if (s == "under" || s == "under-match") return PropertyKind::UnderMatch;
  if (s == "over" || s == "over-match") return PropertyKind::OverMatch;
  if (s == "match") return PropertyKind::Match;
  return std::nullopt;
}

struct CheckStats : SearchStats {
  /// Path-size budget used by the oracle engine.
  std::optional<std::size_t> budget;
  std::chrono::microseconds wall_time{0};
};

/// Verdict of one (node, property) query. `evidence` is a witness for a
/// holding existential property, or a counterexample for a failing
/// universal one.
struct CheckReport {
  NodePath node;
  PropertyKind property = PropertyKind::Meet;
  bool holds = false;
  std::optional<Path> evidence;
  std::string engine;
  std::string detail;
  CheckStats stats;
};

inline bool all_hold(const std::vector<CheckReport>& reports) {
  for (const auto& r : reports)
    if (!r.holds) return false;
  return true;
}

}  // namespace atc
