#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "atcheck/report.hpp"
#include "atcheck/system.hpp"
#include "atcheck/tree.hpp"

namespace atc {

struct RenderOptions {
  bool witness = false;
  bool timing = false;
};

/// One line per report: mark, node, property, engine, detail, then the
/// evidence as arrow-joined state ids when requested.
inline std::string render_text(const TransitionSystem& sys, const std::vector<CheckReport>& reports,
                               const RenderOptions& opts = {}) {
  std::string out;
  for (const auto& r : reports) {
    out += std::string(r.holds ? "✓ " : "✗ ") + format_node_path(r.node) + " " + to_string(r.property) + " " +
           (r.holds ? "holds" : "fails") + " [" + r.engine + "] " + r.detail;
    if (opts.witness && r.evidence) out += " | evidence: " + r.evidence->to_string(sys);
    if (r.stats.budget) out += " | budget " + std::to_string(*r.stats.budget);
    if (opts.timing) out += " | " + std::to_string(r.stats.wall_time.count()) + " us";
    out += "\n";
  }
  if (reports.empty()) out += "no composed nodes; holds vacuously\n";
  return out;
}

inline std::string render_json(const TransitionSystem& sys, const std::vector<CheckReport>& reports,
                               const RenderOptions& opts = {}) {
  auto list = nlohmann::json::array();
  for (const auto& r : reports) {
    nlohmann::json j;
    j["node"] = format_node_path(r.node);
    j["property"] = to_string(r.property);
    j["verdict"] = r.holds ? "holds" : "fails";
    j["evidence"] = nullptr;
    if (opts.witness && r.evidence) {
      auto ids = nlohmann::json::array();
      for (auto s : r.evidence->states()) ids.push_back(sys.name(s));
      j["evidence"] = std::move(ids);
    }
    j["engine"] = r.engine;
    j["detail"] = r.detail;
    nlohmann::json stats;
    stats["states_explored"] = r.stats.states_explored;
    stats["weak_orders"] = r.stats.weak_orders;
    stats["paths_enumerated"] = r.stats.paths_enumerated;
    if (r.stats.budget) stats["budget"] = *r.stats.budget;
    if (opts.timing) stats["wall_time_us"] = r.stats.wall_time.count();
    j["stats"] = std::move(stats);
    list.push_back(std::move(j));
  }
  return list.dump(2) + "\n";
}

}  // namespace atc
