#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "atcheck/system.hpp"
#include "atcheck/tree.hpp"

namespace atc {

/// Newlines become the DOT line-break escape.
inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

/// States sorted by id, each annotated with the labels that hold there;
/// edges sorted by (source id, target id).
inline std::string system_to_dot(const TransitionSystem& sys) {
  std::vector<StateIndex> order(sys.state_count());
  for (StateIndex s = 0; s < order.size(); ++s) order[s] = s;
  std::sort(order.begin(), order.end(), [&](StateIndex a, StateIndex b) { return sys.name(a) < sys.name(b); });
  std::string out = "digraph system {\n  node [shape=box];\n";
  for (auto s : order) {
    std::string props;
    for (const auto& [name, set] : sys.labels())
      if (set.contains(s)) props += (props.empty() ? "" : ", ") + name;
    out += "  " + dot_quote(sys.name(s)) + " [label=" + dot_quote(sys.name(s) + "\n{" + props + "}") + "];\n";
  }
  std::vector<std::pair<std::string, std::string>> edges;
  for (auto [from, to] : sys.edges()) edges.emplace_back(sys.name(from), sys.name(to));
  std::sort(edges.begin(), edges.end());
  for (const auto& [from, to] : edges) out += "  " + dot_quote(from) + " -> " + dot_quote(to) + ";\n";
  return out + "}\n";
}

/// Nodes named by their node path ("root", "1", "1.0"), in preorder.
inline std::string tree_to_dot(const AttackTree& tree) {
  std::string out = "digraph tree {\n  node [shape=box];\n";
  std::string edges;
  for (const auto& path : all_nodes(tree)) {
    const auto& node = tree.at(path);
    auto id = format_node_path(path);
    std::string label = node.goal.pre + " >> " + node.goal.post;
    if (node.op) label = std::string(to_string(*node.op)) + "\n" + label;
    out += "  " + dot_quote(id) + " [label=" + dot_quote(label) + "];\n";
    for (std::size_t i = 0; i < node.children.size(); ++i) {
      auto child = path;
      child.push_back(i);
      edges += "  " + dot_quote(id) + " -> " + dot_quote(format_node_path(child)) + ";\n";
    }
  }
  return out + edges + "}\n";
}

}  // namespace atc
