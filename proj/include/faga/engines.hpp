#ifndef FAGA_ENGINES_HPP
#define FAGA_ENGINES_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "faga/core.hpp"
#include "faga/penalty.hpp"

namespace faga {

struct FireflyParams {
  double alpha = 0.2;  // randomization weight
  double beta0 = 1.0;  // attractiveness at zero distance
  double gamma = 1.0;  // light absorption

  void validate() const;
};

/// Which crossover children are candidates for Gaussian mutation and for
/// replacing the worst members of the population.
enum class MutationScope {
  survivors,     // only children that beat both parents
  all_children,  // every crossover child
};

struct GeneticParams {
  double crossover_rate = 0.8;
  /// Blend weight of the first parent. Unset draws a fresh uniform weight for
  /// every crossover.
  std::optional<double> mixing_alpha;
  double mutation_rate = 0.05;
  /// Absolute mutation step. Unset uses sigma_scale * (upper - lower) per coordinate.
  std::optional<double> sigma;
  double sigma_scale = 0.1;
  std::size_t tournament_size = 3;
  MutationScope mutation_scope = MutationScope::survivors;

  void validate() const;
  RealVector sigma_for(const Bounds& bounds) const;
};

struct RunConfig {
  std::size_t population_size = 30;
  std::size_t max_iterations = 1000;
  std::optional<std::size_t> stagnation_window;
  std::optional<std::uint64_t> max_evaluations;
  bool elitism = true;

  void validate() const;
};

struct RunResult {
  Individual best;  // position is already snapped to the variable kinds
  Trace trace;      // one point per executed iteration
  std::uint64_t evaluations = 0;
  std::size_t iterations = 0;
};

/// Counts objective invocations, snaps positions before evaluating and keeps
/// the best individual ever evaluated.
class Evaluator {
 public:
  Evaluator(const ProblemSpec& problem, PenaltyConfig penalty,
            std::optional<std::uint64_t> budget = std::nullopt);

  void evaluate(Individual& ind);
  bool exhausted() const { return budget_ && count_ >= *budget_; }
  std::uint64_t count() const { return count_; }
  Sense sense() const { return problem_.sense; }
  const ProblemSpec& problem() const { return problem_; }
  const Individual& best() const { return best_; }
  bool has_best() const { return has_best_; }

 private:
  const ProblemSpec& problem_;
  PenaltyConfig penalty_;
  std::optional<std::uint64_t> budget_;
  std::uint64_t count_ = 0;
  Individual best_;
  bool has_best_ = false;
};

double euclidean_distance(std::span<const double> xi, std::span<const double> xj);

/// beta0 * exp(-gamma * r^2)
double attractiveness(const FireflyParams& params, double r);

/// Moves xi toward the brighter xj: xi + beta * (xj - xi) + alpha * (u - 0.5),
/// with `u` supplied explicitly (one entry per coordinate).
RealVector firefly_move(std::span<const double> xi, std::span<const double> xj,
                        const FireflyParams& params, std::span<const double> u);

template <UniformSource R>
RealVector firefly_move(std::span<const double> xi, std::span<const double> xj,
                        const FireflyParams& params, R& rng) {
  RealVector u(xi.size());
  for (auto& v : u) v = rng.uniform();
  return firefly_move(xi, xj, params, u);
}

/// Random displacement alpha * (u - 0.5) used when no brighter firefly exists.
template <UniformSource R>
RealVector firefly_random_walk(std::span<const double> xi, const FireflyParams& params, R& rng) {
  RealVector out(xi.begin(), xi.end());
  for (auto& v : out) v += params.alpha * (rng.uniform() - 0.5);
  return out;
}

/// Index of the tournament winner among `size` distinct members drawn without
/// replacement; ties go to the lowest population index.
std::size_t tournament_select(std::span<const Individual> population, std::size_t size,
                              RngStream& rng, Sense sense);

/// alpha * p1 + (1 - alpha) * p2, coordinate-wise.
RealVector blend_crossover(std::span<const double> p1, std::span<const double> p2,
                           double mixing_alpha);

/// Adds N(0, sigma_k) to every coordinate and clamps to the bounds.
RealVector gaussian_mutate(std::span<const double> x, std::span<const double> sigma,
                           RngStream& rng, const Bounds& bounds);

RunResult fa_run(const ProblemSpec& problem, const FireflyParams& fparams,
                 const RunConfig& config, const PenaltyConfig& penalty, RngStream& rng);

RunResult ga_run(const ProblemSpec& problem, const GeneticParams& gparams,
                 const RunConfig& config, const PenaltyConfig& penalty, RngStream& rng);

RunResult faga_run(const ProblemSpec& problem, const FireflyParams& fparams,
                   const GeneticParams& gparams, const RunConfig& config,
                   const PenaltyConfig& penalty, RngStream& rng);

}  // namespace faga

#endif  // FAGA_ENGINES_HPP
