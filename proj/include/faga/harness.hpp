#ifndef FAGA_HARNESS_HPP
#define FAGA_HARNESS_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "faga/core.hpp"
#include "faga/engines.hpp"
#include "faga/knapsack.hpp"

namespace faga::harness {

enum class Algorithm { fa, ga, faga };

std::string_view algorithm_name(Algorithm algo);
std::optional<Algorithm> parse_algorithm(std::string_view name);

enum class ProblemFamily { benchmark, engineering, skp, mkp };

/// Parsed problem selector. Accepted forms:
///   sphere | benchmark:sphere      (dimension taken from the plan)
///   spring | engineering:spring
///   skp:f3
///   mkp:<path>[#k]                 (k-th instance of an OR-Library file, 1-based)
struct ProblemSelector {
  ProblemFamily family = ProblemFamily::benchmark;
  std::string name;  // benchmark/engineering/skp id, or file path for mkp
  std::size_t index = 1;

  /// Throws ConfigError on unknown names.
  static ProblemSelector parse(std::string_view text);
  std::string label() const;
};

struct ExperimentPlan {
  std::string problem = "sphere";
  std::size_t dimension = 30;
  Algorithm algorithm = Algorithm::faga;
  std::size_t trials = 30;
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
  /// Store measured wall-clock times in the results. Off by default so that
  /// repeated runs produce identical files.
  bool record_time = false;

  FireflyParams firefly;
  GeneticParams genetic;
  RunConfig run;
  std::optional<std::size_t> population;  // unset: 20 for engineering, 30 otherwise
  std::optional<double> theta;            // unset: per-family default
  double p_mut = 0.05;
  bool scale_gamma = true;
  bool greedy_seed = true;

  void validate() const;
};

struct ExperimentResult {
  std::string problem;
  std::string algorithm;
  std::size_t trials = 0;
  Sense sense = Sense::minimize;
  TrialStats stats;
  RealVector best_position;  // of the best trial; 0/1 entries for knapsack
  std::optional<double> known_optimum;
  std::size_t dimension = 0;
};

/// Runs `plan.trials` independent solves with seeds seed + t and aggregates
/// them. Configuration errors are rethrown with the failing trial index.
ExperimentResult run_experiment(const ExperimentPlan& plan);

/// Continuous problem behind a benchmark or engineering selector.
ProblemSpec continuous_problem(const ProblemSelector& selector, std::size_t dimension);

/// Every plan field, keyed by its long flag name.
nlohmann::json plan_to_json(const ExperimentPlan& plan);
/// Overlays the fields present in `config` onto `base`. Unknown keys are a
/// ConfigError.
ExperimentPlan plan_from_json(const nlohmann::json& config, ExperimentPlan base);

enum class Format { csv, json };

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string results_csv(const ExperimentResult& result);
std::string results_json(const ExperimentResult& result, const ExperimentPlan& plan);
std::string trace_csv(const ExperimentResult& result);

/// `<dir>/<stem>_trace.csv` next to the results file.
std::filesystem::path trace_path_for(const std::filesystem::path& destination);

/// Writes the results file and its trace sibling. Throws OutputError naming
/// the path on failure.
void emit_results(const ExperimentResult& result, const ExperimentPlan& plan, Format format,
                  const std::filesystem::path& destination);

/// Inverse of results_json / results_csv for the summary fields.
ExperimentResult parse_results_json(std::string_view text);
ExperimentResult parse_results_csv(std::string_view text);

}  // namespace faga::harness

#endif  // FAGA_HARNESS_HPP
