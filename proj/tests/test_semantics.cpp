#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace atc;
using atc::test::load_system;
using atc::test::path_of;
using atc::test::states_named;

namespace {

GoalExpression and2(const char* a, const char* b, const char* c, const char* d) {
  return GoalExpression::composed(Op::And, {{a, b}, {c, d}});
}

// Tree labels in the fixture files; `true` is inserted as an expression.
TransitionSystem sys_b() { return load_system("sys-b.json", {"true"}); }

}  // namespace

TEST(GoalMembership, AtomicExamples) {
  auto a = load_system("sys-a-loop.json");
  EXPECT_TRUE(path_satisfies_goal(a, path_of(a, {"e0", "e1", "e2", "e3", "e4", "e5", "e6", "e7"}), {"iota", "gamma"}));
  EXPECT_TRUE(path_satisfies_goal(a, path_of(a, {"e0"}), {"iota", "iota"}));
  auto b = sys_b();
  auto delta = path_of(b, {"e0p", "e0", "e1", "e2", "e3", "e4", "e5", "e6", "e7"});
  EXPECT_FALSE(path_satisfies_goal(b, delta, {"iota2", "gamma2"}));
  EXPECT_THROW(path_satisfies_goal(b, delta, {"nope", "gamma2"}), UnknownProposition);
}

TEST(ExpressionMembership, FixtureExamples) {
  auto b = sys_b();
  auto delta = path_of(b, {"e0p", "e0", "e1", "e2", "e3", "e4", "e5", "e6", "e7"});
  EXPECT_TRUE(path_satisfies_expression(b, delta, and2("true", "gamma21", "iota22", "gamma22")));
  auto a = load_system("sys-b.json");
  auto rho = path_of(a, {"e0", "e1", "e2", "e3", "e4", "e5", "e6", "e7"});
  auto sand = GoalExpression::composed(
      Op::Sand, {{"iota221", "gamma221"}, {"iota222", "gamma222"}, {"iota223", "gamma223"}});
  EXPECT_TRUE(path_satisfies_expression(a, rho, sand));
  auto no_match = GoalExpression::composed(Op::Or, {{"gamma", "iota"}, {"gamma22", "iota22"}});
  EXPECT_FALSE(path_satisfies_expression(a, rho, no_match));
  // Cut states e2 and e6: dropping e6 leaves no cut into the last segment.
  auto short_rho = path_of(a, {"e0", "e1", "e2", "e3", "e4", "e5"});
  EXPECT_FALSE(path_satisfies_expression(a, short_rho, sand));
}

TEST(ExpressionMembership, MatchesDefinitionOnRandomSystems) {
  std::mt19937 rng(2024);
  std::size_t compared = 0;
  for (int round = 0; round < 60; ++round) {
    auto sys = test::random_system(rng, 4, 0.4);
    auto expr = test::random_expression(rng, 2, 3);
    auto stream = enumerate_paths(sys, {8});
    while (auto p = stream.next()) {
      ASSERT_EQ(path_satisfies_expression(sys, *p, expr), oracle_member(sys, *p, expr))
          << expr.to_string() << " on " << p->to_string(sys);
      ++compared;
    }
  }
  EXPECT_GT(compared, 10000U);
}

TEST(Ef, Evaluation) {
  auto a = load_system("sys-a-loop.json");
  EXPECT_EQ(eval_ef(a, EfFormula::ef(EfFormula::lit("gamma"))), a.all_states());
  auto b = sys_b();
  EXPECT_EQ(eval_ef(b, EfFormula::conj(EfFormula::lit("iota"), EfFormula::lit("iota1"))), states_named(b, {"e0p"}));
  EXPECT_EQ(eval_ef(b, EfFormula::neg("iota1")), b.label("iota1").complement());
  std::vector<std::string> one{"x"};
  auto empty_label = build_system(one, {}, {{"p", {}}});
  EXPECT_TRUE(eval_ef(empty_label, EfFormula::lit("p")).empty());
  EXPECT_EQ(EfFormula::ef(EfFormula::conj(EfFormula::neg("a"), EfFormula::lit("b"))).to_string(), "EF (!a & b)");
}

TEST(Ef, ClosureAndOracleAgreement) {
  std::mt19937 rng(3);
  for (int round = 0; round < 100; ++round) {
    auto sys = test::random_system(rng, 1 + round % 6, 0.3);
    auto phi = EfFormula::disj(EfFormula::lit("a0"), EfFormula::conj(EfFormula::neg("a1"), EfFormula::lit("a2")));
    auto inner = eval_ef(sys, phi);
    auto ef = eval_ef(sys, EfFormula::ef(phi));
    EXPECT_TRUE(inner.is_subset_of(ef));
    EXPECT_EQ(eval_ef(sys, EfFormula::ef(EfFormula::ef(phi))), ef);
    StateSet seen(sys.state_count());
    auto stream = enumerate_paths(sys, {sys.state_count()});
    while (auto p = stream.next())
      if (inner.contains(p->back())) seen.insert(p->front());
    EXPECT_EQ(seen, ef);
  }
}

TEST(Witness, FixtureExamples) {
  auto b = sys_b();
  auto expr = and2("true", "gamma21", "iota22", "gamma22");
  auto w = find_witness(b, expr);
  ASSERT_TRUE(w);
  EXPECT_TRUE(path_satisfies_expression(b, *w, expr));

  auto a = load_system("sys-a.json");
  EndpointConstraint c;
  c.start_not_in = a.label("iota");
  EXPECT_FALSE(find_witness(a, GoalExpression::atomic({"iota", "gamma"}), c));

  auto sc = load_system("sys-c.json");
  EndpointConstraint at_e8;
  at_e8.start_in = states_named(sc, {"e8"});
  EXPECT_FALSE(find_witness(sc, GoalExpression::composed(Op::Or, {{"iota1p", "gamma1"}, {"iota2p", "gamma2"}}), at_e8));
}

TEST(Witness, MarkerSearchCases) {
  std::vector<std::string> one{"s"};
  auto sys = build_system(one, {}, {{"p", {"s"}}});
  auto w = and_marker_search(sys, {{"p", "p"}, {"p", "p"}}, {});
  ASSERT_TRUE(w);
  EXPECT_EQ(w->size(), 0U);

  auto sample = reduce(parse_dimacs(test::slurp(test::fixture_path("sat3.cnf"))));
  auto wf = find_witness(sample.system, sample.expr);
  ASSERT_TRUE(wf);
  EXPECT_TRUE(path_satisfies_expression(sample.system, *wf, sample.expr));

  auto unsat = reduce(parse_dimacs("p cnf 1 2\n1 0\n-1 0\n"));
  EXPECT_FALSE(find_witness(unsat.system, unsat.expr));
}

TEST(Witness, ArityCap) {
  std::vector<std::string> one{"s"};
  auto sys = build_system(one, {}, {{"p", {"s"}}});
  std::vector<Goal> five(5, Goal{"p", "p"});
  EXPECT_THROW(and_marker_search(sys, five, {}), ArityCapExceeded);
  EXPECT_TRUE(and_marker_search(sys, five, {}, {5}));
}

TEST(Witness, TiedMarkersShareAPosition) {
  // AND(a>>b, c>>d) on x -> y with λ(a)=λ(c)={x}, λ(b)=λ(d)={y}: the only
  // witness puts both k markers at x and both l markers at y.
  std::vector<std::string> names{"x", "y"};
  std::vector<std::pair<std::string, std::string>> edges{{"x", "y"}};
  auto sys = build_system(names, edges, {{"a", {"x"}}, {"b", {"y"}}, {"c", {"x"}}, {"d", {"y"}}});
  auto w = find_witness(sys, and2("a", "b", "c", "d"));
  ASSERT_TRUE(w);
  EXPECT_EQ(w->to_string(sys), "x -> y");
}

TEST(Witness, SoundAndCompleteAgainstOracle) {
  std::mt19937 rng(99);
  int nonempty = 0;
  for (int round = 0; round < 300; ++round) {
    auto sys = test::random_system(rng, 1 + round % 5, 0.3);
    auto expr = test::random_expression(rng, 2, 3);
    EndpointConstraint c;
    // The constraint is mirrored as a goal for the oracle query.
    Goal mirror{"top", "top"};
    bool inside = true;
    if (round % 3 == 1) {
      c.start_in = sys.label("a3");
      mirror = {"a3", "top"};
    }
    if (round % 3 == 2) {
      c.end_not_in = sys.label("a3");
      mirror = {"top", "a3"};
      inside = false;
    }
    auto w = find_witness(sys, expr, c);
    auto budget = witness_budget(sys, expr.arity());
    auto o = oracle_find(sys, mirror, expr, [&](bool g, bool e) { return e && g == inside; }, budget);
    ASSERT_EQ(w.has_value(), o.path.has_value()) << expr.to_string();
    if (w) {
      ++nonempty;
      EXPECT_TRUE(c.admits(*w));
      EXPECT_TRUE(path_satisfies_expression(sys, *w, expr));
      EXPECT_LE(w->size(), budget.max_transitions);
    }
  }
  EXPECT_GT(nonempty, 30);
}
