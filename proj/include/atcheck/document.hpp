#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "atcheck/error.hpp"
#include "atcheck/goal.hpp"
#include "atcheck/prop_expr.hpp"
#include "atcheck/system.hpp"
#include "atcheck/tree.hpp"

namespace atc {

struct StateDecl {
  std::string id;
  std::optional<std::map<std::string, std::string>> assign;
  std::vector<std::string> props;
};

/// System file contents before labels are computed.
struct SystemDocument {
  std::optional<std::map<std::string, std::vector<std::string>>> variables;
  std::vector<StateDecl> states;
  std::vector<std::pair<std::string, std::string>> transitions;
  std::map<std::string, std::string> propositions;
};

/// Tree file node. `pre` is "true" when omitted.
struct TreeDocument {
  std::string pre = "true";
  std::string post;
  std::optional<Op> op;
  std::vector<TreeDocument> children;
};

namespace detail {

using Json = nlohmann::json;

inline std::string pointer_join(const std::string& base, const std::string& key) {
  std::string escaped;
  for (char c : key) {
    if (c == '~')
      escaped += "~0";
    else if (c == '/')
      escaped += "~1";
    else
      escaped += c;
  }
  return base + "/" + escaped;
}
inline std::string pointer_join(const std::string& base, std::size_t i) { return base + "/" + std::to_string(i); }

inline Json parse_json(const std::string& bytes) {
  try {
    return Json::parse(bytes);
  } catch (const Json::parse_error& e) {
    throw ParseError("byte " + std::to_string(e.byte), "invalid JSON");
  }
}

inline void expect_keys(const Json& j, const std::string& at, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ParseError(at.empty() ? "/" : at, "expected an object");
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ParseError(pointer_join(at, key), "unknown key '" + key + "'");
  }
}

inline const std::string& expect_string(const Json& j, const std::string& at) {
  if (!j.is_string()) throw ParseError(at, "expected a string");
  return j.get_ref<const std::string&>();
}

inline const Json& expect_array(const Json& j, const std::string& at) {
  if (!j.is_array()) throw ParseError(at, "expected an array");
  return j;
}

inline TreeDocument parse_tree_node(const Json& j, const std::string& at) {
  expect_keys(j, at, {"pre", "post", "op", "children"});
  TreeDocument node;
  if (j.contains("pre")) node.pre = expect_string(j["pre"], pointer_join(at, "pre"));
  if (!j.contains("post")) throw ParseError(at.empty() ? "/" : at, "missing key 'post'");
  node.post = expect_string(j["post"], pointer_join(at, "post"));
  if (j.contains("op")) {
    auto op_at = pointer_join(at, "op");
    node.op = parse_op(expect_string(j["op"], op_at));
    if (!node.op) throw ParseError(op_at, "op must be OR, AND or SAND");
  }
  if (j.contains("children")) {
    auto kids_at = pointer_join(at, "children");
    const auto& kids = expect_array(j["children"], kids_at);
    for (std::size_t i = 0; i < kids.size(); ++i) node.children.push_back(parse_tree_node(kids[i], pointer_join(kids_at, i)));
  }
  if (node.op && node.children.size() < 2)
    throw ParseError(at.empty() ? "/" : at, std::string(to_string(*node.op)) + " needs at least 2 children");
  if (!node.op && !node.children.empty()) throw ParseError(at.empty() ? "/" : at, "children given without op");
  return node;
}

inline Json tree_to_json(const TreeDocument& t) {
  Json j = Json::object();
  j["pre"] = t.pre;
  j["post"] = t.post;
  if (t.op) {
    j["op"] = to_string(*t.op);
    j["children"] = Json::array();
    for (const auto& c : t.children) j["children"].push_back(tree_to_json(c));
  }
  return j;
}

}  // namespace detail

inline SystemDocument parse_system_file(const std::string& bytes) {
  using detail::pointer_join;
  auto j = detail::parse_json(bytes);
  detail::expect_keys(j, "", {"variables", "states", "transitions", "propositions"});
  SystemDocument doc;
  if (j.contains("variables")) {
    const auto& vars = j["variables"];
    if (!vars.is_object()) throw ParseError("/variables", "expected an object");
    std::map<std::string, std::vector<std::string>> domains;
    for (const auto& [name, values] : vars.items()) {
      auto at = pointer_join("/variables", name);
      detail::expect_array(values, at);
      auto& dom = domains[name];
      for (std::size_t i = 0; i < values.size(); ++i) dom.push_back(detail::expect_string(values[i], pointer_join(at, i)));
      if (dom.empty()) throw ParseError(at, "empty value domain");
    }
    doc.variables = std::move(domains);
  }
  if (!j.contains("states")) throw ParseError("/", "missing key 'states'");
  const auto& states = detail::expect_array(j["states"], "/states");
  for (std::size_t i = 0; i < states.size(); ++i) {
    auto at = pointer_join("/states", i);
    detail::expect_keys(states[i], at, {"id", "assign", "props"});
    StateDecl decl;
    if (!states[i].contains("id")) throw ParseError(at, "missing key 'id'");
    decl.id = detail::expect_string(states[i]["id"], pointer_join(at, "id"));
    if (states[i].contains("assign")) {
      const auto& a = states[i]["assign"];
      auto a_at = pointer_join(at, "assign");
      if (!a.is_object()) throw ParseError(a_at, "expected an object");
      std::map<std::string, std::string> assign;
      for (const auto& [var, value] : a.items()) assign[var] = detail::expect_string(value, pointer_join(a_at, var));
      decl.assign = std::move(assign);
    }
    if (states[i].contains("props")) {
      auto p_at = pointer_join(at, "props");
      const auto& p = detail::expect_array(states[i]["props"], p_at);
      for (std::size_t k = 0; k < p.size(); ++k) decl.props.push_back(detail::expect_string(p[k], pointer_join(p_at, k)));
    }
    doc.states.push_back(std::move(decl));
  }
  if (j.contains("transitions")) {
    const auto& ts = detail::expect_array(j["transitions"], "/transitions");
    for (std::size_t i = 0; i < ts.size(); ++i) {
      auto at = pointer_join("/transitions", i);
      if (!ts[i].is_array() || ts[i].size() != 2) throw ParseError(at, "expected a [from, to] pair");
      doc.transitions.emplace_back(detail::expect_string(ts[i][0], pointer_join(at, 0)),
                                   detail::expect_string(ts[i][1], pointer_join(at, 1)));
    }
  }
  if (j.contains("propositions")) {
    const auto& props = j["propositions"];
    if (!props.is_object()) throw ParseError("/propositions", "expected an object");
    for (const auto& [name, text] : props.items()) {
      auto at = pointer_join("/propositions", name);
      if (!is_plain_name(name)) throw ParseError(at, "proposition names must be identifiers");
      doc.propositions[name] = detail::expect_string(text, at);
    }
  }
  return doc;
}

inline TreeDocument parse_tree_file(const std::string& bytes) { return detail::parse_tree_node(detail::parse_json(bytes), ""); }

inline std::string serialize(const SystemDocument& doc) {
  detail::Json j = detail::Json::object();
  if (doc.variables) j["variables"] = *doc.variables;
  j["states"] = detail::Json::array();
  for (const auto& s : doc.states) {
    detail::Json st = {{"id", s.id}};
    if (s.assign) st["assign"] = *s.assign;
    if (!s.props.empty()) st["props"] = s.props;
    j["states"].push_back(std::move(st));
  }
  j["transitions"] = detail::Json::array();
  for (const auto& [from, to] : doc.transitions) j["transitions"].push_back({from, to});
  if (!doc.propositions.empty()) j["propositions"] = doc.propositions;
  return j.dump(2) + "\n";
}

inline std::string serialize(const TreeDocument& doc) { return detail::tree_to_json(doc).dump(2) + "\n"; }

/// Tree over label names: bare identifiers name propositions, any other
/// text is an expression labelled under its own text and is added to
/// `expressions`.
inline AttackTree bind_tree(const TreeDocument& doc, std::set<std::string>* expressions = nullptr) {
  auto note = [&](const std::string& text) {
    if (expressions && !is_plain_name(text)) expressions->insert(text);
  };
  note(doc.pre);
  note(doc.post);
  AttackTree t{Goal{doc.pre, doc.post}, doc.op, {}};
  for (const auto& c : doc.children) t.children.push_back(bind_tree(c, expressions));
  return t;
}

/// s ∈ λ(p) iff p's expression holds under s's assignment, united with the
/// explicit `props` lists. `extra` expressions are labelled under their text.
inline TransitionSystem compile_labeling(const SystemDocument& doc, const std::set<std::string>& extra = {},
                                         std::vector<std::string>* warnings = nullptr) {
  using detail::pointer_join;
  const auto domains = doc.variables.value_or(std::map<std::string, std::vector<std::string>>{});
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < doc.states.size(); ++i) {
    const auto& s = doc.states[i];
    auto at = pointer_join("/states", i);
    ids.push_back(s.id);
    if (!s.assign) {
      if (!domains.empty()) throw ParseError(at, "state '" + s.id + "' has no assignment");
      continue;
    }
    for (const auto& [var, value] : *s.assign) {
      auto it = domains.find(var);
      if (it == domains.end()) throw ParseError(pointer_join(pointer_join(at, "assign"), var), "undeclared variable '" + var + "'");
      if (std::find(it->second.begin(), it->second.end(), value) == it->second.end())
        throw ParseError(pointer_join(pointer_join(at, "assign"), var), "value '" + value + "' is not in the domain of '" + var + "'");
    }
    for (const auto& [var, values] : domains)
      if (!s.assign->count(var)) throw ParseError(pointer_join(at, "assign"), "missing value for variable '" + var + "'");
  }

  std::map<std::string, std::vector<std::string>> labeling;
  auto label_expr = [&](const std::string& name, const std::string& text, const std::string& at) {
    PropExpr e = PropExpr::constant(false);
    try {
      e = parse_prop_expr(text);
    } catch (const ParseError& err) {
      throw ParseError(at + " " + err.location(), err.message());
    }
    auto problems = e.unresolved(domains);
    if (!problems.empty()) throw ParseError(at, problems.front());
    auto& members = labeling[name];
    for (const auto& s : doc.states) {
      static const std::map<std::string, std::string> kNone;
      if (e.eval(s.assign ? *s.assign : kNone)) members.push_back(s.id);
    }
  };
  for (const auto& [name, text] : doc.propositions) label_expr(name, text, pointer_join("/propositions", name));
  for (const auto& text : extra)
    if (!doc.propositions.count(text)) label_expr(text, text, "tree expression '" + text + "'");
  for (const auto& s : doc.states)
    for (const auto& p : s.props) {
      auto& members = labeling[p];
      if (std::find(members.begin(), members.end(), s.id) == members.end()) members.push_back(s.id);
    }
  try {
    return build_system(ids, doc.transitions, labeling, warnings);
  } catch (const ModelError& e) {
    throw ParseError("/", e.what());
  }
}

/// System and tree bound together; expression goals in the tree are labelled.
struct Model {
  TransitionSystem system;
  AttackTree tree;
};

inline Model load_model(const SystemDocument& sys_doc, const TreeDocument& tree_doc,
                        std::vector<std::string>* warnings = nullptr) {
  std::set<std::string> exprs;
  auto tree = bind_tree(tree_doc, &exprs);
  return {compile_labeling(sys_doc, exprs, warnings), std::move(tree)};
}

}  // namespace atc
