// Command-line front end: solve, oracle, list, export-data.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "faga/benchmarks.hpp"
#include "faga/engineering.hpp"
#include "faga/harness.hpp"
#include "faga/knapsack.hpp"

namespace {

using nlohmann::json;
using namespace faga;
namespace hs = faga::harness;

constexpr int kRuntimeError = 1;
constexpr int kConfigError = 2;

std::string num(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

/// Registers typed options whose values are collected into a JSON object
/// keyed like the configuration file, but only when given on the command line.
class FlagTable {
 public:
  explicit FlagTable(CLI::App* app) : app_(app) {}

  template <typename T>
  void add(const std::string& key, const std::string& help) {
    auto storage = std::make_shared<T>();
    CLI::Option* opt = app_->add_option("--" + key, *storage, help);
    appliers_.push_back([opt, storage, key](json& out) {
      if (opt->count() > 0) out[key] = *storage;
    });
  }

  json given() const {
    json out = json::object();
    for (const auto& apply : appliers_) apply(out);
    return out;
  }

 private:
  CLI::App* app_;
  std::vector<std::function<void(json&)>> appliers_;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
}

std::optional<std::uint64_t> env_seed() {
  const char* raw = std::getenv("FAGA_SEED");
  if (!raw || !*raw) return std::nullopt;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (*end != '\0') throw ConfigError("FAGA_SEED must be an unsigned integer");
  return v;
}

int cmd_solve(const FlagTable& flags, const std::string& config_path, const std::string& out,
              const std::string& format_name, bool quiet) {
  hs::ExperimentPlan plan;
  json file = json::object();
  if (!config_path.empty()) file = read_json_file(config_path);
  const json given = flags.given();
  if (!given.contains("problem") && !file.contains("problem"))
    throw ConfigError("solve needs --problem (or a config file naming one)");
  plan = hs::plan_from_json(file, plan);
  if (!given.contains("seed") && !file.contains("seed"))
    if (auto s = env_seed()) plan.seed = *s;
  plan = hs::plan_from_json(given, plan);
  plan.validate();

  hs::Format format = hs::Format::json;
  if (format_name == "csv" || (format_name.empty() && out.size() >= 4 &&
                               out.compare(out.size() - 4, 4, ".csv") == 0))
    format = hs::Format::csv;
  else if (!format_name.empty() && format_name != "json")
    throw ConfigError("--format must be csv or json");

  const auto result = hs::run_experiment(plan);
  if (!out.empty()) hs::emit_results(result, plan, format, out);
  if (!quiet) {
    std::cout << result.problem << ' ' << result.algorithm << " best=" << num(result.stats.best)
              << " mean=" << num(result.stats.mean)
              << " evals=" << std::llround(result.stats.avg_function_evals) << '\n';
  }
  return 0;
}

int cmd_oracle(const std::string& problem) {
  const auto sel = hs::ProblemSelector::parse(problem);
  if (sel.family != hs::ProblemFamily::skp)
    throw ConfigError("oracle needs a single-constraint knapsack selector (skp:<id>)");
  const auto inst = knapsack::builtin_skp(sel.name);
  const auto sol = knapsack::dp_solve(inst);
  std::cout << "optimal=" << num(sol.value) << '\n' << "items=";
  bool first = true;
  for (std::size_t i = 0; i < sol.bits.size(); ++i) {
    if (!sol.bits[i]) continue;
    std::cout << (first ? "" : ",") << i + 1;
    first = false;
  }
  std::cout << '\n';
  return 0;
}

int cmd_list() {
  for (auto id : kAllBenchmarks) {
    const auto box = benchmark_box(id);
    std::cout << benchmark_name(id) << "  kind=benchmark dim=30 bounds=[" << num(box.lower) << ","
              << num(box.upper) << "] optimum=0\n";
  }
  for (auto id : engineering::kAllProblems) {
    const auto p = engineering::make_problem(id);
    std::cout << engineering::problem_name(id) << "  kind=engineering dim=" << p.dimension()
              << " constraints=" << p.inequality.size()
              << " optimum=" << num(p.known_optimum.value_or(NAN)) << '\n';
  }
  for (const auto& id : knapsack::builtin_skp_ids()) {
    const auto inst = knapsack::builtin_skp(id);
    std::cout << "skp:" << id << "  kind=knapsack items=" << inst.items()
              << " capacity=" << num(inst.capacity)
              << " optimum=" << num(inst.known_optimum.value_or(NAN));
    if (inst.data_incomplete)
      std::cout << " declared_items=" << inst.declared_items << " data=incomplete";
    std::cout << '\n';
  }
  return 0;
}

int cmd_export(const std::string& problem, const std::string& out) {
  std::vector<knapsack::MkpInstance> instances;
  if (problem.empty() || problem == "all") {
    for (const auto& id : knapsack::builtin_skp_ids())
      instances.push_back(knapsack::as_mkp(knapsack::builtin_skp(id)));
  } else {
    const auto sel = hs::ProblemSelector::parse(problem);
    if (sel.family != hs::ProblemFamily::skp)
      throw ConfigError("export-data takes skp:<id> or all");
    instances.push_back(knapsack::as_mkp(knapsack::builtin_skp(sel.name)));
  }
  const std::string text = knapsack::serialize_orlib_mkp(instances);
  if (out.empty() || out == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream f(out, std::ios::binary | std::ios::trunc);
  if (!f || !(f << text) || !f.flush()) throw hs::OutputError("cannot write '" + out + "'");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Firefly / genetic / hybrid optimizer"};
  app.require_subcommand(1);

  auto* solve = app.add_subcommand("solve", "Run repeated trials of an optimizer");
  FlagTable flags(solve);
  flags.add<std::string>("problem", "sphere | spring | skp:f3 | mkp:FILE[#k] ...");
  flags.add<std::string>("algo", "fa, ga or faga (default faga)");
  flags.add<std::size_t>("trials", "independent trials (default 30)");
  flags.add<std::uint64_t>("seed", "base seed; trial t uses seed + t (fallback: FAGA_SEED)");
  flags.add<std::size_t>("iters", "iterations per trial (default 1000)");
  flags.add<std::size_t>("dim", "benchmark dimension (default 30)");
  flags.add<std::size_t>("jobs", "worker threads (default 1)");
  flags.add<std::size_t>("population", "population size (default 30, engineering 20)");
  flags.add<double>("alpha", "firefly randomization weight");
  flags.add<double>("beta0", "firefly attractiveness at distance 0");
  flags.add<double>("gamma", "firefly light absorption");
  flags.add<bool>("scale-gamma", "knapsack: divide gamma by the item count");
  flags.add<double>("crossover-rate", "crossover probability");
  flags.add<double>("mixing-alpha", "blend weight (default: drawn per crossover)");
  flags.add<double>("mutation-rate", "Gaussian mutation probability");
  flags.add<double>("sigma", "absolute mutation step (default: sigma-scale * range)");
  flags.add<double>("sigma-scale", "mutation step as a fraction of the range");
  flags.add<std::size_t>("tournament-size", "tournament size");
  flags.add<std::string>("mutation-scope", "survivors or all");
  flags.add<std::size_t>("stagnation", "stop after this many iterations without improvement");
  flags.add<std::uint64_t>("max-evals", "objective evaluation budget per trial");
  flags.add<bool>("elitism", "re-insert the best-ever individual");
  flags.add<double>("theta", "static penalty coefficient");
  flags.add<double>("p-mut", "knapsack bit-flip probability");
  flags.add<bool>("greedy-seed", "knapsack: seed one individual with the greedy fill");
  flags.add<bool>("record-time", "write measured wall-clock times into the results");
  std::string config_path, out = "results.json", format_name;
  bool quiet = false;
  solve->add_option("--config", config_path, "JSON file with the same keys as the flags");
  solve->add_option("--out", out, "results file; trace goes to <stem>_trace.csv")
      ->capture_default_str();
  solve->add_option("--format", format_name, "csv or json (default: from --out extension)");
  solve->add_flag("--quiet", quiet, "suppress the summary line");

  auto* oracle = app.add_subcommand("oracle", "Exact knapsack optimum");
  std::string oracle_problem;
  oracle->add_option("--problem", oracle_problem, "skp:<id>")->required();

  auto* list = app.add_subcommand("list", "List built-in problems");

  auto* exporter = app.add_subcommand("export-data", "Write appendix instances in OR-Library form");
  std::string export_problem, export_out;
  exporter->add_option("--problem", export_problem, "skp:<id> or all (default all)");
  exporter->add_option("--out", export_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (*solve) return cmd_solve(flags, config_path, out, format_name, quiet);
    if (*oracle) return cmd_oracle(oracle_problem);
    if (*list) return cmd_list();
    if (*exporter) return cmd_export(export_problem, export_out);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kRuntimeError;
}
