#pragma once

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "atcheck/document.hpp"
#include "atcheck/error.hpp"
#include "atcheck/goal.hpp"
#include "atcheck/system.hpp"
#include "atcheck/tree.hpp"

namespace atc {

/// CNF over variables 1..variables; a literal is +v or -v.
struct CnfInstance {
  std::size_t variables = 0;
  std::vector<std::vector<int>> clauses;
};

inline CnfInstance parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  std::size_t declared = 0;
  CnfInstance cnf;
  std::vector<int> open;
  auto where = [&] { return "line " + std::to_string(line_no); };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok == "c") continue;
    if (tok == "%") break;
    if (tok == "p") {
      if (header) throw ParseError(where(), "duplicate problem line");
      std::string fmt;
      long long r = -1;
      long long m = -1;
      std::string extra;
      if (!(ls >> fmt >> r >> m) || fmt != "cnf" || r < 0 || m < 0 || (ls >> extra))
        throw ParseError(where(), "expected 'p cnf <variables> <clauses>'");
      header = true;
      cnf.variables = static_cast<std::size_t>(r);
      declared = static_cast<std::size_t>(m);
      continue;
    }
    if (!header) throw ParseError(where(), "clause before problem line");
    do {
      char* end = nullptr;
      long v = std::strtol(tok.c_str(), &end, 10);
      if (end == tok.c_str() || *end != '\0') throw ParseError(where(), "bad literal '" + tok + "'");
      if (v == 0) {
        cnf.clauses.push_back(std::move(open));
        open.clear();
        continue;
      }
      if (static_cast<std::size_t>(std::labs(v)) > cnf.variables)
        throw ParseError(where(), "literal " + tok + " exceeds declared variable count");
      open.push_back(static_cast<int>(v));
    } while (ls >> tok);
  }
  if (!header) throw ParseError("line " + std::to_string(line_no), "missing problem line");
  if (!open.empty()) cnf.clauses.push_back(std::move(open));
  if (cnf.clauses.size() != declared)
    throw ParseError("line " + std::to_string(line_no), "header declares " + std::to_string(declared) +
                                                            " clauses, found " + std::to_string(cnf.clauses.size()));
  return cnf;
}

inline std::string to_dimacs(const CnfInstance& cnf) {
  std::string out = "p cnf " + std::to_string(cnf.variables) + " " + std::to_string(cnf.clauses.size()) + "\n";
  for (const auto& c : cnf.clauses) {
    for (int lit : c) out += std::to_string(lit) + " ";
    out += "0\n";
  }
  return out;
}

/// Exhaustive evaluation over all 2^r assignments.
inline bool truth_table_sat(const CnfInstance& cnf) {
  if (cnf.variables > 20) throw ModelError("truth table limited to 20 variables");
  for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << cnf.variables); ++bits) {
    bool all = true;
    for (const auto& c : cnf.clauses) {
      bool any = false;
      for (int lit : c) {
        bool value = (bits >> (std::abs(lit) - 1)) & 1U;
        any = any || (lit > 0 ? value : !value);
      }
      if (!any) {
        all = false;
        break;
      }
    }
    if (all) return true;
  }
  return false;
}

inline std::string literal_state(int lit) { return (lit > 0 ? "x" : "nx") + std::to_string(std::abs(lit)); }

/// Files of the reduction: states s, x_i, nx_i; edges s -> x_1|nx_1 and
/// every x_i|nx_i -> x_{i+1}|nx_{i+1}; λ(start) = {s}, λ(C_j) = literals of
/// clause j. The tree is start >> true refined by AND(start >> C_j).
/// A single clause is duplicated; no clauses gives AND(start >> true, start >> true).
inline std::pair<SystemDocument, TreeDocument> reduction_documents(const CnfInstance& cnf) {
  SystemDocument sys;
  sys.states.push_back({"s", std::nullopt, {"start"}});
  for (std::size_t v = 1; v <= cnf.variables; ++v) {
    sys.states.push_back({literal_state(static_cast<int>(v)), std::nullopt, {}});
    sys.states.push_back({literal_state(-static_cast<int>(v)), std::nullopt, {}});
  }
  auto state_of = [&](int lit) -> StateDecl& {
    auto v = static_cast<std::size_t>(std::abs(lit));
    return sys.states[2 * v - 1 + (lit < 0 ? 1 : 0)];
  };
  if (cnf.variables > 0) {
    sys.transitions.emplace_back("s", "x1");
    sys.transitions.emplace_back("s", "nx1");
  }
  for (std::size_t v = 1; v < cnf.variables; ++v)
    for (int a : {1, -1})
      for (int b : {1, -1})
        sys.transitions.emplace_back(literal_state(a * static_cast<int>(v)), literal_state(b * static_cast<int>(v + 1)));

  TreeDocument tree;
  tree.pre = "start";
  tree.post = "true";
  tree.op = Op::And;
  for (std::size_t j = 0; j < cnf.clauses.size(); ++j) {
    auto name = "C" + std::to_string(j + 1);
    sys.propositions[name] = "false";
    for (int lit : cnf.clauses[j]) {
      if (lit == 0 || static_cast<std::size_t>(std::abs(lit)) > cnf.variables)
        throw ModelError("literal " + std::to_string(lit) + " out of range");
      auto& props = state_of(lit).props;
      if (props.empty() || props.back() != name) props.push_back(name);
    }
    tree.children.push_back({"start", name, std::nullopt, {}});
  }
  if (tree.children.empty()) tree.children.push_back({"start", "true", std::nullopt, {}});
  if (tree.children.size() == 1) tree.children.push_back(tree.children.front());
  return {std::move(sys), std::move(tree)};
}

struct Reduction {
  TransitionSystem system;
  GoalExpression expr;
};

/// ⟦expr⟧ ≠ ∅ iff `cnf` is satisfiable.
inline Reduction reduce(const CnfInstance& cnf) {
  auto [sys_doc, tree_doc] = reduction_documents(cnf);
  auto model = load_model(sys_doc, tree_doc);
  std::vector<Goal> goals;
  for (const auto& c : model.tree.children) goals.push_back(c.goal);
  return {std::move(model.system), GoalExpression::composed(Op::And, std::move(goals))};
}

}  // namespace atc
