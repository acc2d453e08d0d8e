#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "atcheck/atcheck.hpp"

namespace atc::test {

inline std::string fixture_path(const std::string& name) { return std::string(ATC_FIXTURE_DIR) + "/" + name; }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Model load_fixture(const std::string& system, const std::string& tree) {
  return load_model(parse_system_file(slurp(fixture_path(system))), parse_tree_file(slurp(fixture_path(tree))));
}

inline TransitionSystem load_system(const std::string& system, const std::set<std::string>& extra = {}) {
  return compile_labeling(parse_system_file(slurp(fixture_path(system))), extra);
}

inline StateSet states_named(const TransitionSystem& sys, std::initializer_list<const char*> ids) {
  StateSet s(sys.state_count());
  for (const char* id : ids) s.insert(sys.index_of(id));
  return s;
}

inline Path path_of(const TransitionSystem& sys, std::initializer_list<const char*> ids) {
  std::vector<StateIndex> seq;
  for (const char* id : ids) seq.push_back(sys.index_of(id));
  return Path(sys, std::move(seq));
}

/// Random system over states s0.. with propositions a0..a{props-1}; each
/// ordered pair is an edge with probability `density`, each state carries
/// each proposition with probability 1/2. `top` labels every state.
inline TransitionSystem random_system(std::mt19937& rng, std::size_t states, double density, std::size_t props = 4) {
  std::bernoulli_distribution edge(density);
  std::bernoulli_distribution coin(0.5);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < states; ++i) names.push_back("s" + std::to_string(i));
  std::vector<std::pair<std::string, std::string>> transitions;
  for (const auto& a : names)
    for (const auto& b : names)
      if (edge(rng)) transitions.emplace_back(a, b);
  std::map<std::string, std::vector<std::string>> labeling;
  for (std::size_t p = 0; p < props; ++p) {
    auto& members = labeling["a" + std::to_string(p)];
    for (const auto& n : names)
      if (coin(rng)) members.push_back(n);
  }
  labeling["top"] = names;
  return build_system(names, transitions, labeling);
}

inline Goal random_goal(std::mt19937& rng, std::size_t props = 4) {
  std::uniform_int_distribution<std::size_t> pick(0, props - 1);
  return {"a" + std::to_string(pick(rng)), "a" + std::to_string(pick(rng))};
}

inline Op random_op(std::mt19937& rng) {
  std::uniform_int_distribution<int> pick(0, 2);
  return static_cast<Op>(pick(rng));
}

inline GoalExpression random_expression(std::mt19937& rng, std::size_t min_arity, std::size_t max_arity,
                                        std::size_t props = 4) {
  std::uniform_int_distribution<std::size_t> arity(min_arity, max_arity);
  std::vector<Goal> goals;
  for (std::size_t i = arity(rng); i > 0; --i) goals.push_back(random_goal(rng, props));
  return GoalExpression::composed(random_op(rng), std::move(goals));
}

/// Uniformly chosen successor walk of the given size; shorter if it hits a sink.
inline Path random_walk(std::mt19937& rng, const TransitionSystem& sys, std::size_t size) {
  std::uniform_int_distribution<StateIndex> start(0, static_cast<StateIndex>(sys.state_count() - 1));
  std::vector<StateIndex> seq{start(rng)};
  for (std::size_t i = 0; i < size; ++i) {
    auto succ = sys.successors(seq.back());
    if (succ.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, succ.size() - 1);
    seq.push_back(succ[pick(rng)]);
  }
  return Path(sys, std::move(seq));
}

}  // namespace atc::test
