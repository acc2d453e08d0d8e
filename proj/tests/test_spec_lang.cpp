#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace atc;

namespace {

std::string parse_error_location(const std::string& text) {
  try {
    parse_prop_expr(text);
  } catch (const ParseError& e) {
    return e.location();
  }
  return "no error";
}

std::string system_error(const std::string& json) {
  try {
    compile_labeling(parse_system_file(json));
  } catch (const ParseError& e) {
    return e.location();
  }
  return "no error";
}

std::string tree_error(const std::string& json) {
  try {
    parse_tree_file(json);
  } catch (const ParseError& e) {
    return e.location();
  }
  return "no error";
}

PropExpr random_prop(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> kind(0, depth > 0 ? 5 : 2);
  std::uniform_int_distribution<int> name(0, 2);
  switch (kind(rng)) {
    case 0: return PropExpr::var_eq("v" + std::to_string(name(rng)), "x" + std::to_string(name(rng)));
    case 1: return PropExpr::constant(true);
    case 2: return PropExpr::constant(false);
    case 3: return PropExpr::negation(random_prop(rng, depth - 1));
    case 4: return PropExpr::conj(random_prop(rng, depth - 1), random_prop(rng, depth - 1));
    default: return PropExpr::disj(random_prop(rng, depth - 1), random_prop(rng, depth - 1));
  }
}

}  // namespace

TEST(PropExpr, ParsesAndEvaluates) {
  auto e = parse_prop_expr("pos == room1 && !(lock1 == true || win == true)");
  std::map<std::string, std::string> s{{"pos", "room1"}, {"lock1", "false"}, {"win", "false"}};
  EXPECT_TRUE(e.eval(s));
  s["win"] = "true";
  EXPECT_FALSE(e.eval(s));
  EXPECT_EQ(e.to_string(), "pos == room1 && !(lock1 == true || win == true)");
  EXPECT_TRUE(parse_prop_expr("true").eval({}));
  EXPECT_FALSE(parse_prop_expr("a == b").eval({}));
  EXPECT_EQ(parse_prop_expr("a == b || c == d && e == f").to_string(), "a == b || c == d && e == f");
  EXPECT_EQ(parse_prop_expr("(a == b || c == d) && e == f").to_string(), "(a == b || c == d) && e == f");
}

TEST(PropExpr, ErrorsCarryLineAndColumn) {
  EXPECT_EQ(parse_error_location("a == "), "1:6");
  EXPECT_EQ(parse_error_location("a == b &&\n  c"), "2:4");
  EXPECT_EQ(parse_error_location("(a == b"), "1:8");
  EXPECT_EQ(parse_error_location("a = b"), "1:3");
  EXPECT_EQ(parse_error_location("a == b c == d"), "1:8");
  EXPECT_EQ(parse_error_location(""), "1:1");
}

TEST(PropExpr, RoundTripsRandomExpressions) {
  std::mt19937 rng(3);
  for (int i = 0; i < 2000; ++i) {
    auto e = random_prop(rng, 4);
    auto back = parse_prop_expr(e.to_string());
    ASSERT_EQ(back, e) << e.to_string();
  }
}

TEST(PropExpr, RandomTokenStreamsNeverCrash) {
  const char* tokens[] = {"a", "b", "==", "&&", "||", "!", "(", ")", "true", "false", " ", "\n"};
  std::mt19937 rng(4);
  std::uniform_int_distribution<std::size_t> pick(0, std::size(tokens) - 1);
  std::uniform_int_distribution<int> len(0, 12);
  std::size_t ok = 0;
  for (int i = 0; i < 5000; ++i) {
    std::string text;
    for (int k = len(rng); k > 0; --k) text += std::string(tokens[pick(rng)]) + " ";
    try {
      auto e = parse_prop_expr(text);
      EXPECT_EQ(parse_prop_expr(e.to_string()), e);
      ++ok;
    } catch (const ParseError& err) {
      EXPECT_NE(err.location().find(':'), std::string::npos);
    }
  }
  EXPECT_GT(ok, 0U);
}

TEST(PlainName, Rules) {
  EXPECT_TRUE(is_plain_name("iota1"));
  EXPECT_TRUE(is_plain_name("p_prime'"));
  EXPECT_FALSE(is_plain_name("true"));
  EXPECT_FALSE(is_plain_name("a == b"));
  EXPECT_FALSE(is_plain_name("1a"));
  EXPECT_FALSE(is_plain_name(""));
}

TEST(Documents, GoldenLabels) {
  auto a = test::load_system("sys-a.json");
  EXPECT_EQ(a.label("p"), test::states_named(a, {"e0", "e1"}));
  EXPECT_EQ(a.label("p_prime"), test::states_named(a, {"e3", "e4", "e5", "e6", "e7"}));
  auto b = test::load_system("sys-b.json");
  EXPECT_EQ(b.label("iota") & b.label("iota1"), test::states_named(b, {"e0p"}));
  EXPECT_EQ(b.state_count(), 10U);
}

TEST(Documents, TreeExpressionsAreLabelled) {
  auto sys_doc = parse_system_file(test::slurp(test::fixture_path("sys-a.json")));
  TreeDocument tree{"pos == out", "win == true", std::nullopt, {}};
  auto m = load_model(sys_doc, tree);
  EXPECT_TRUE(m.system.has_label("pos == out"));
  EXPECT_TRUE(m.system.has_label("win == true"));
  EXPECT_EQ(m.tree.goal.pre, "pos == out");
}

TEST(Documents, RoundTrip) {
  for (const char* name : {"sys-a.json", "sys-a-loop.json", "sys-b.json", "sys-c.json"}) {
    auto doc = parse_system_file(test::slurp(test::fixture_path(name)));
    auto text = serialize(doc);
    EXPECT_EQ(serialize(parse_system_file(text)), text) << name;
    auto a = compile_labeling(doc);
    auto b = compile_labeling(parse_system_file(text));
    EXPECT_EQ(a.names(), b.names());
    EXPECT_EQ(a.edges(), b.edges());
    EXPECT_EQ(a.labels(), b.labels());
  }
  for (const char* name : {"tree-1.json", "tree-2.json"}) {
    auto doc = parse_tree_file(test::slurp(test::fixture_path(name)));
    auto text = serialize(doc);
    EXPECT_EQ(serialize(parse_tree_file(text)), text) << name;
  }
}

TEST(Documents, PreDefaultsToTrue) {
  auto doc = parse_tree_file(test::slurp(test::fixture_path("tree-1.json")));
  EXPECT_EQ(doc.children[1].children[0].pre, "true");
}

TEST(Documents, SchemaErrorsPointAtTheProblem) {
  EXPECT_EQ(system_error(R"({"states": [{"id": "a", "colour": 1}]})"), "/states/0/colour");
  EXPECT_EQ(system_error(R"({"states": [], "extra": 0})"), "/extra");
  EXPECT_EQ(system_error(R"({"states": [{"id": "a"}], "transitions": [["a"]]})"), "/transitions/0");
  EXPECT_EQ(system_error(R"({"variables": {"x": ["0"]}, "states": [{"id": "a", "assign": {"x": "1"}}]})"),
            "/states/0/assign/x");
  EXPECT_EQ(system_error(R"({"variables": {"x": ["0"]}, "states": [{"id": "a"}]})"), "/states/0");
  EXPECT_EQ(system_error(R"({"states": [{"id": "a"}], "propositions": {"p": "y == z"}})"), "/propositions/p");
  EXPECT_EQ(system_error(R"({"states": [{"id": "a"}], "propositions": {"p": "y =="}})"), "/propositions/p 1:5");
  EXPECT_EQ(system_error(R"({"states": [)"), "byte 13");
  EXPECT_EQ(tree_error(R"({"post": "g", "op": "AND", "children": [{"post": "h"}]})"), "/");
  EXPECT_EQ(tree_error(R"({"post": "g", "op": "OR", "children": [{"post": "h"}, {"post": "h", "x": 1}]})"),
            "/children/1/x");
  EXPECT_EQ(tree_error(R"({"post": "g", "op": "XOR", "children": [{"post": "h"}, {"post": "h"}]})"), "/op");
  EXPECT_EQ(tree_error(R"({"pre": "g"})"), "/");
  EXPECT_EQ(tree_error(R"({"post": "g", "children": [{"post": "h"}, {"post": "h"}]})"), "/");
}

TEST(Documents, GoldenLabelsSysBAndSysC) {
  const std::map<std::string, std::vector<const char*>> b_labels{
      {"iota", {"e0p", "e0"}},    {"gamma", {"e7", "e7p"}},  {"iota1", {"e0p"}},
      {"gamma1", {"e7", "e7p"}},  {"iota2", {"e0"}},         {"gamma2", {"e7", "e7p"}},
      {"gamma21", {"e4", "e5", "e6", "e7"}},                  {"iota22", {"e0"}},
      {"gamma22", {"e7", "e7p"}}, {"iota221", {"e0"}},       {"gamma221", {"e2", "e3", "e4", "e5"}},
      {"iota222", {"e2", "e3", "e4", "e5"}},                  {"gamma222", {"e6", "e7"}},
      {"iota223", {"e6", "e7"}},  {"gamma223", {"e7", "e7p"}}};
  auto b = test::load_system("sys-b.json");
  for (const auto& [prop, ids] : b_labels) {
    StateSet want(b.state_count());
    for (const char* id : ids) want.insert(b.index_of(id));
    EXPECT_EQ(b.label(prop), want) << prop;
  }
  auto c = test::load_system("sys-c.json");
  EXPECT_EQ(c.label("iota"), test::states_named(c, {"e0p", "e0", "e8"}));
  EXPECT_EQ(c.label("gamma"), test::states_named(c, {"e7", "e7p", "e9"}));
  EXPECT_EQ(c.label("iota1p"), test::states_named(c, {"e0p"}));
  EXPECT_EQ(c.label("iota2p"), test::states_named(c, {"e0"}));
  EXPECT_EQ(c.label("iota2"), test::states_named(c, {"e0", "e8"}));
}

TEST(Documents, TrueLabelsEveryState) {
  auto doc = parse_system_file(test::slurp(test::fixture_path("sys-a.json")));
  auto sys = compile_labeling(doc, {"true"});
  EXPECT_EQ(sys.label("true"), sys.all_states());
}

TEST(Documents, FixtureTreeShape) {
  auto doc = parse_tree_file(test::slurp(test::fixture_path("tree-1.json")));
  EXPECT_EQ(doc.op, Op::Or);
  EXPECT_EQ(doc.children[1].children[1].children.size(), 3U);
}
