#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "atcheck/atcheck.hpp"

namespace {

enum Exit { kHolds = 0, kFails = 1, kUsage = 2, kCapExceeded = 3 };

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw atc::ParseError(path, "cannot read file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw atc::ParseError(out_path, "cannot write file");
  out << text;
}

std::size_t default_arity_cap() {
  if (const char* env = std::getenv("ATC_MAX_AND_ARITY")) {
    char* end = nullptr;
    auto v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
    std::cerr << "warning: ignoring malformed ATC_MAX_AND_ARITY='" << env << "'\n";
  }
  return atc::kDefaultAndArityCap;
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

struct CheckArgs {
  std::string system;
  std::string tree;
  std::string property;
  std::string scope = "local";
  std::optional<std::string> node;
  std::string engine = "exact";
  std::optional<std::size_t> budget;
  std::size_t arity_cap = atc::kDefaultAndArityCap;
  std::optional<std::size_t> path_budget;
  std::string format = "text";
  bool witness = false;
  bool timing = false;
  std::string out;
  std::size_t jobs = 1;
};

int run_check(const CheckArgs& a) {
  auto property = atc::parse_property(a.property);
  if (!property) throw CLI::ValidationError("--property", "unknown property '" + a.property + "'");
  if (a.scope == "local" && !a.node) throw CLI::ValidationError("--node", "required with --scope local");
  if (a.scope == "global" && a.node) throw CLI::ValidationError("--node", "not allowed with --scope global");

  std::vector<std::string> warnings;
  auto model = atc::load_model(atc::parse_system_file(read_file(a.system)), atc::parse_tree_file(read_file(a.tree)),
                               &warnings);
  print_warnings(warnings);

  atc::CheckOptions opts;
  opts.and_arity_cap = a.arity_cap;
  opts.over_and_path_budget = a.path_budget;
  opts.engine = a.engine == "oracle" ? atc::Engine::Oracle : atc::Engine::Exact;
  opts.budget = a.budget;

  std::vector<atc::CheckReport> reports;
  if (*property == atc::PropertyKind::Admissible) {
    auto base = a.node ? atc::parse_node_path(*a.node) : atc::NodePath{};
    reports = atc::check_admissible(model.system, model.tree, opts, base);
  } else if (a.scope == "global") {
    reports = atc::check_global(model.system, model.tree, *property, opts, a.jobs);
  } else {
    reports.push_back(atc::check_local(model.system, model.tree, atc::parse_node_path(*a.node), *property, opts));
  }

  atc::RenderOptions render{a.witness, a.timing};
  emit(a.format == "json" ? atc::render_json(model.system, reports, render)
                          : atc::render_text(model.system, reports, render),
       a.out);
  return atc::all_hold(reports) ? kHolds : kFails;
}

int run_export_dot(const std::string& system, const std::string& tree, const std::string& out) {
  if (system.empty() && tree.empty()) throw CLI::ValidationError("export-dot", "needs --system and/or --tree");
  std::string text;
  std::optional<atc::TreeDocument> tree_doc;
  if (!tree.empty()) tree_doc = atc::parse_tree_file(read_file(tree));
  if (!system.empty()) {
    std::vector<std::string> warnings;
    auto doc = atc::parse_system_file(read_file(system));
    auto sys = tree_doc ? atc::load_model(doc, *tree_doc, &warnings).system : atc::compile_labeling(doc, {}, &warnings);
    print_warnings(warnings);
    text += atc::system_to_dot(sys);
  }
  if (tree_doc) text += atc::tree_to_dot(atc::bind_tree(*tree_doc));
  emit(text, out);
  return kHolds;
}

int run_gen_sat(const std::string& dimacs, const std::string& system_out, const std::string& tree_out) {
  auto cnf = atc::parse_dimacs(read_file(dimacs));
  auto [sys, tree] = atc::reduction_documents(cnf);
  emit(atc::serialize(sys), system_out);
  emit(atc::serialize(tree), tree_out);
  std::cout << "reduced " << cnf.variables << " variables, " << cnf.clauses.size() << " clauses: " << sys.states.size()
            << " states, AND arity " << tree.children.size() << "\n";
  return kHolds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Attack-tree correctness checker"};
  app.require_subcommand(1);

  CheckArgs check;
  check.arity_cap = default_arity_cap();
  auto* cmd_check = app.add_subcommand("check", "Check a property of an attack tree against a system");
  cmd_check->add_option("--system", check.system, "System JSON file")->required();
  cmd_check->add_option("--tree", check.tree, "Tree JSON file")->required();
  cmd_check->add_option("--property", check.property, "admissible|meet|under|over|match")->required();
  cmd_check->add_option("--scope", check.scope, "local|global")->check(CLI::IsMember({"local", "global"}));
  cmd_check->add_option("--node", check.node, "Node path for local checks: root, 1, 1.1, ...");
  cmd_check->add_option("--engine", check.engine, "exact|oracle")->check(CLI::IsMember({"exact", "oracle"}));
  cmd_check->add_option("--budget", check.budget, "Oracle path-size budget");
  cmd_check->add_option("--max-and-arity", check.arity_cap, "AND arity cap (env ATC_MAX_AND_ARITY)")
      ->check(CLI::PositiveNumber);
  cmd_check->add_option("--path-budget", check.path_budget, "Candidate limit for the AND Over-Match search");
  cmd_check->add_option("--format", check.format, "text|json")->check(CLI::IsMember({"text", "json"}));
  cmd_check->add_flag("--witness", check.witness, "Print witnesses and counterexamples");
  cmd_check->add_flag("--timing", check.timing, "Print wall time per report");
  cmd_check->add_option("--out", check.out, "Write the report to FILE");
  cmd_check->add_option("--jobs", check.jobs, "Worker threads for global checks")->check(CLI::PositiveNumber);

  std::string dot_system;
  std::string dot_tree;
  std::string dot_out;
  auto* cmd_dot = app.add_subcommand("export-dot", "Export system and/or tree as Graphviz DOT");
  cmd_dot->add_option("--system", dot_system, "System JSON file");
  cmd_dot->add_option("--tree", dot_tree, "Tree JSON file");
  cmd_dot->add_option("--out", dot_out, "Write DOT to FILE");

  std::string dimacs;
  std::string sat_system_out;
  std::string sat_tree_out;
  auto* cmd_sat = app.add_subcommand("gen-sat", "Reduce a DIMACS CNF to a system and AND tree");
  cmd_sat->add_option("dimacs", dimacs, "DIMACS CNF file")->required();
  cmd_sat->add_option("--system-out", sat_system_out, "System JSON output")->required();
  cmd_sat->add_option("--tree-out", sat_tree_out, "Tree JSON output")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*cmd_check) return run_check(check);
    if (*cmd_dot) return run_export_dot(dot_system, dot_tree, dot_out);
    if (*cmd_sat) return run_gen_sat(dimacs, sat_system_out, sat_tree_out);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const atc::ArityCapExceeded& e) {
    std::cerr << "error: " << e.what() << " (raise --max-and-arity)\n";
    return kCapExceeded;
  } catch (const atc::SearchBudgetExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCapExceeded;
  } catch (const atc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
