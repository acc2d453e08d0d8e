#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

#include <unistd.h>

#include "cli_runner.hpp"
#include "support.hpp"

using atc::test::fixture_path;
using atc::test::run_cli;

namespace {

std::string pair_args(const char* sys, const char* tree) {
  return "--system " + fixture_path(sys) + " --tree " + fixture_path(tree);
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("atc-test-" + std::to_string(::getpid()) + "-" + name)).string();
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto at = hay.find(needle); at != std::string::npos; at = hay.find(needle, at + 1)) ++n;
  return n;
}

}  // namespace

TEST(Cli, CheckExitCodes) {
  auto b1 = pair_args("sys-b.json", "tree-1.json");
  EXPECT_EQ(run_cli("check " + b1 + " --property match --scope local --node root").exit_code, 0);
  auto global = run_cli("check " + b1 + " --property match --scope global --witness");
  EXPECT_EQ(global.exit_code, 1);
  EXPECT_NE(global.out.find("✗ 1 match fails"), std::string::npos);
  auto over = run_cli("check " + pair_args("sys-c.json", "tree-2.json") +
                      " --property over --scope local --node root --witness");
  EXPECT_EQ(over.exit_code, 1);
  EXPECT_NE(over.out.find("evidence: e8 -> e9"), std::string::npos);
  EXPECT_EQ(run_cli("check " + b1 + " --property admissible --scope global").exit_code, 0);
}

TEST(Cli, UsageErrors) {
  auto b1 = pair_args("sys-b.json", "tree-1.json");
  EXPECT_EQ(run_cli("check " + b1 + " --property match --scope local").exit_code, 2);
  EXPECT_EQ(run_cli("check " + b1 + " --property match --scope global --node root").exit_code, 2);
  EXPECT_EQ(run_cli("check " + b1 + " --property nope --scope global").exit_code, 2);
  EXPECT_EQ(run_cli("check " + b1 + " --property match --scope local --node 7").exit_code, 2);
  EXPECT_EQ(run_cli("check " + b1 + " --property match --scope local --node 0").exit_code, 2);
  EXPECT_EQ(run_cli("").exit_code, 2);
}

TEST(Cli, ArityCapIsDistinct) {
  auto b1 = pair_args("sys-b.json", "tree-1.json");
  EXPECT_EQ(run_cli("check " + b1 + " --property match --scope local --node 1 --max-and-arity 1").exit_code, 3);
  auto node1 = "check " + b1 + " --property match --scope local --node 1";
  EXPECT_EQ(run_cli(node1, "ATC_MAX_AND_ARITY=1").exit_code, 3);
  EXPECT_EQ(run_cli(node1 + " --max-and-arity 4", "ATC_MAX_AND_ARITY=1").exit_code, 1);
}

TEST(Cli, JsonReport) {
  auto r = run_cli("check " + pair_args("sys-b.json", "tree-1.json") + " --property under --scope local --node 1 --format json --witness");
  EXPECT_EQ(r.exit_code, 1);
  auto j = nlohmann::json::parse(r.out);
  ASSERT_TRUE(j.is_array());
  ASSERT_EQ(j.size(), 1U);
  for (const char* key : {"node", "property", "verdict", "evidence", "engine", "stats"}) EXPECT_TRUE(j[0].contains(key)) << key;
  EXPECT_EQ(j[0]["node"], "1");
  EXPECT_EQ(j[0]["evidence"].front(), "e0p");
  EXPECT_EQ(j[0]["evidence"].back(), "e7");
}

TEST(Cli, ExportDot) {
  auto sys = run_cli("export-dot --system " + fixture_path("sys-a.json"));
  EXPECT_EQ(sys.exit_code, 0);
  EXPECT_NE(sys.out.find("\"e0\" -> \"e1\""), std::string::npos);
  auto tree = run_cli("export-dot --tree " + fixture_path("tree-1.json"));
  EXPECT_EQ(tree.exit_code, 0);
  EXPECT_EQ(count(tree.out, "[label="), 8U);
  auto bad = temp_path("bad.json");
  {
    std::FILE* f = std::fopen(bad.c_str(), "w");
    std::fputs("{ not json", f);
    std::fclose(f);
  }
  EXPECT_EQ(run_cli("export-dot --system " + bad).exit_code, 2);
  std::filesystem::remove(bad);
}

TEST(Cli, GenSat) {
  auto sys = temp_path("sat-sys.json");
  auto tree = temp_path("sat-tree.json");
  auto gen = [&](const std::string& cnf) {
    return run_cli("gen-sat " + cnf + " --system-out " + sys + " --tree-out " + tree).exit_code;
  };
  auto check = [&] {
    return run_cli("check --system " + sys + " --tree " + tree + " --property admissible --scope global").exit_code;
  };
  ASSERT_EQ(gen(fixture_path("sat3.cnf")), 0);
  EXPECT_EQ(check(), 0);
  ASSERT_EQ(gen(fixture_path("unsat.cnf")), 0);
  EXPECT_EQ(check(), 1);
  auto bad = temp_path("bad.cnf");
  {
    std::FILE* f = std::fopen(bad.c_str(), "w");
    std::fputs("p cnf two 1\n1 0\n", f);
    std::fclose(f);
  }
  EXPECT_EQ(gen(bad), 2);
  for (const auto& p : {sys, tree, bad}) std::filesystem::remove(p);
}

TEST(Cli, PathBudgetExhaustion) {
  auto dir = std::filesystem::temp_directory_path() / ("atc-budget-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  auto sys = (dir / "s.json").string();
  auto tree = (dir / "t.json").string();
  {
    std::FILE* f = std::fopen(sys.c_str(), "w");
    std::fputs(R"({"states": [{"id": "a", "props": ["top"]}, {"id": "b", "props": ["top"]}, {"id": "c", "props": ["top"]}],
                   "transitions": [["a", "b"], ["b", "a"], ["b", "c"], ["c", "b"], ["a", "c"], ["c", "a"]]})",
               f);
    std::fclose(f);
    f = std::fopen(tree.c_str(), "w");
    std::fputs(R"({"pre": "top", "post": "top", "op": "AND", "children": [{"pre": "top", "post": "top"}, {"pre": "top", "post": "top"}]})", f);
    std::fclose(f);
  }
  auto args = "check --system " + sys + " --tree " + tree + " --property over --scope local --node root";
  EXPECT_EQ(run_cli(args).exit_code, 0);
  EXPECT_EQ(run_cli(args + " --path-budget 2").exit_code, 3);
  std::filesystem::remove_all(dir);
}
