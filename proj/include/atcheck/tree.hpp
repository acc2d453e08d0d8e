#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "atcheck/error.hpp"
#include "atcheck/goal.hpp"

namespace atc {

/// Child indices from the root; empty addresses the root.
using NodePath = std::vector<std::size_t>;

/// "root" for the root, otherwise dot-separated child indices ("1.0").
inline std::string format_node_path(const NodePath& p) {
  if (p.empty()) return "root";
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) out += (i ? "." : "") + std::to_string(p[i]);
  return out;
}

inline NodePath parse_node_path(const std::string& text) {
  if (text == "root" || text.empty()) return {};
  NodePath out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto dot = text.find('.', start);
    auto part = text.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
      throw ModelError("malformed node path '" + text + "'");
    out.push_back(std::stoul(part));
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  return out;
}

/// Node goal plus an optional refinement into children. Construction does
/// not relate the node goal to its children's goals.
struct AttackTree {
  Goal goal;
  std::optional<Op> op;
  std::vector<AttackTree> children;

  static AttackTree leaf(Goal g) { return AttackTree{std::move(g), std::nullopt, {}}; }
  static AttackTree node(Goal g, Op op, std::vector<AttackTree> children) {
    return AttackTree{std::move(g), op, std::move(children)};
  }

  bool is_leaf() const { return !op; }

  std::size_t size() const {
    std::size_t n = 1;
    for (const auto& c : children) n += c.size();
    return n;
  }

  const AttackTree& at(const NodePath& path) const {
    const AttackTree* cur = this;
    for (auto i : path) {
      if (i >= cur->children.size()) throw ModelError("node path " + format_node_path(path) + " does not resolve");
      cur = &cur->children[i];
    }
    return *cur;
  }
};

/// Structural errors: arity below two, or children without an operator.
inline std::vector<std::string> validate_tree(const AttackTree& tree) {
  std::vector<std::string> errors;
  auto walk = [&](auto& self, const AttackTree& t, NodePath& at) -> void {
    if (t.op && t.children.size() < 2)
      errors.push_back("node " + format_node_path(at) + ": " + to_string(*t.op) + " has arity " +
                       std::to_string(t.children.size()) + ", needs >= 2");
    if (!t.op && !t.children.empty()) errors.push_back("node " + format_node_path(at) + ": children without operator");
    for (std::size_t i = 0; i < t.children.size(); ++i) {
      at.push_back(i);
      self(self, t.children[i], at);
      at.pop_back();
    }
  };
  NodePath at;
  walk(walk, tree, at);
  return errors;
}

/// The node's goal and, for composed nodes, OP over the children's main goals.
inline std::pair<Goal, std::optional<GoalExpression>> expression_at(const AttackTree& tree, const NodePath& path) {
  const auto& node = tree.at(path);
  if (node.is_leaf()) return {node.goal, std::nullopt};
  std::vector<Goal> goals;
  for (const auto& c : node.children) goals.push_back(c.goal);
  return {node.goal, GoalExpression::composed(*node.op, std::move(goals))};
}

/// Preorder list of composed nodes.
inline std::vector<NodePath> composed_nodes(const AttackTree& tree) {
  std::vector<NodePath> out;
  auto walk = [&](auto& self, const AttackTree& t, NodePath& at) -> void {
    if (t.is_leaf()) return;
    out.push_back(at);
    for (std::size_t i = 0; i < t.children.size(); ++i) {
      at.push_back(i);
      self(self, t.children[i], at);
      at.pop_back();
    }
  };
  NodePath at;
  walk(walk, tree, at);
  return out;
}

/// Preorder list of every node.
inline std::vector<NodePath> all_nodes(const AttackTree& tree) {
  std::vector<NodePath> out;
  auto walk = [&](auto& self, const AttackTree& t, NodePath& at) -> void {
    out.push_back(at);
    for (std::size_t i = 0; i < t.children.size(); ++i) {
      at.push_back(i);
      self(self, t.children[i], at);
      at.pop_back();
    }
  };
  NodePath at;
  walk(walk, tree, at);
  return out;
}

}  // namespace atc
