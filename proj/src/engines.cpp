#include "faga/engines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace faga {

void FireflyParams::validate() const {
  if (!std::isfinite(alpha) || alpha < 0.0) throw ConfigError("alpha must be finite and >= 0");
  if (!std::isfinite(beta0) || beta0 <= 0.0) throw ConfigError("beta0 must be finite and > 0");
  if (!std::isfinite(gamma) || gamma < 0.0) throw ConfigError("gamma must be finite and >= 0");
}

void GeneticParams::validate() const {
  auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!unit(crossover_rate)) throw ConfigError("crossover_rate must lie in [0, 1]");
  if (!unit(mutation_rate)) throw ConfigError("mutation_rate must lie in [0, 1]");
  if (mixing_alpha && !unit(*mixing_alpha)) throw ConfigError("mixing_alpha must lie in [0, 1]");
  if (sigma && !(*sigma >= 0.0)) throw ConfigError("sigma must be >= 0");
  if (!(sigma_scale >= 0.0)) throw ConfigError("sigma_scale must be >= 0");
  if (tournament_size < 1) throw ConfigError("tournament_size must be >= 1");
}

RealVector GeneticParams::sigma_for(const Bounds& bounds) const {
  RealVector out(bounds.dimension());
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = sigma ? *sigma : sigma_scale * (bounds.upper[k] - bounds.lower[k]);
  return out;
}

void RunConfig::validate() const {
  if (population_size < 1) throw ConfigError("population_size must be >= 1");
  if (stagnation_window && *stagnation_window < 1)
    throw ConfigError("stagnation_window must be >= 1");
}

Evaluator::Evaluator(const ProblemSpec& problem, PenaltyConfig penalty,
                     std::optional<std::uint64_t> budget)
    : problem_(problem), penalty_(penalty), budget_(budget) {}

void Evaluator::evaluate(Individual& ind) {
  const RealVector x = snap_to_kind(ind.position, problem_.kinds, problem_.bounds);
  const Evaluation e = evaluate_penalized(problem_, x, penalty_);
  ++count_;
  ind.fitness = e.raw;
  ind.penalized_fitness = e.penalized;
  if (!has_best_ || better(e.penalized, best_.penalized_fitness, problem_.sense)) {
    best_ = ind;
    has_best_ = true;
  }
}

double euclidean_distance(std::span<const double> xi, std::span<const double> xj) {
  if (xi.size() != xj.size()) throw std::invalid_argument("euclidean_distance: length mismatch");
  double sum = 0.0;
  for (std::size_t k = 0; k < xi.size(); ++k) {
    const double d = xi[k] - xj[k];
    sum += d * d;
  }
  return std::sqrt(sum);
}

double attractiveness(const FireflyParams& params, double r) {
  return params.beta0 * std::exp(-params.gamma * r * r);
}

RealVector firefly_move(std::span<const double> xi, std::span<const double> xj,
                        const FireflyParams& params, std::span<const double> u) {
  if (xi.size() != xj.size() || u.size() != xi.size())
    throw std::invalid_argument("firefly_move: length mismatch");
  const double beta = attractiveness(params, euclidean_distance(xi, xj));
  RealVector out(xi.size());
  for (std::size_t k = 0; k < xi.size(); ++k)
    out[k] = xi[k] + beta * (xj[k] - xi[k]) + params.alpha * (u[k] - 0.5);
  return out;
}

std::size_t tournament_select(std::span<const Individual> population, std::size_t size,
                              RngStream& rng, Sense sense) {
  const std::size_t n = population.size();
  if (size < 1 || size > n)
    throw std::invalid_argument("tournament_select: size must lie in [1, population size]");
  // partial Fisher-Yates over the index set
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::size_t winner = n;
  for (std::size_t t = 0; t < size; ++t) {
    std::swap(idx[t], idx[t + rng.index(n - t)]);
    const std::size_t c = idx[t];
    if (winner == n) {
      winner = c;
      continue;
    }
    const double fc = population[c].penalized_fitness;
    const double fw = population[winner].penalized_fitness;
    if (better(fc, fw, sense) || (fc == fw && c < winner)) winner = c;
  }
  return winner;
}

RealVector blend_crossover(std::span<const double> p1, std::span<const double> p2,
                           double mixing_alpha) {
  if (p1.size() != p2.size()) throw std::invalid_argument("blend_crossover: length mismatch");
  RealVector child(p1.size());
  for (std::size_t k = 0; k < p1.size(); ++k)
    child[k] = mixing_alpha * p1[k] + (1.0 - mixing_alpha) * p2[k];
  return child;
}

RealVector gaussian_mutate(std::span<const double> x, std::span<const double> sigma,
                           RngStream& rng, const Bounds& bounds) {
  if (sigma.size() != x.size()) throw std::invalid_argument("gaussian_mutate: length mismatch");
  RealVector out(x.begin(), x.end());
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (sigma[k] < 0.0) throw std::invalid_argument("gaussian_mutate: negative sigma");
    if (sigma[k] == 0.0) continue;
    out[k] = bounds.clamp(k, out[k] + rng.normal(0.0, sigma[k]));
  }
  return out;
}

namespace {

/// Shared iteration bookkeeping for the three engines.
class RunLoop {
 public:
  RunLoop(const ProblemSpec& problem, const RunConfig& config, const PenaltyConfig& penalty)
      : config_(config), evaluator_(problem, penalty, config.max_evaluations) {
    problem.validate();
    config.validate();
    penalty.validate();
  }

  Evaluator& evaluator() { return evaluator_; }
  Sense sense() const { return evaluator_.sense(); }

  std::vector<Individual> initial_population(RngStream& rng) {
    auto pop = init_population(evaluator_.problem().bounds, config_.population_size, rng);
    for (auto& ind : pop) evaluator_.evaluate(ind);
    return pop;
  }

  bool should_continue() const {
    if (iterations_ >= config_.max_iterations) return false;
    if (evaluator_.exhausted()) return false;
    if (config_.stagnation_window && stagnant_ >= *config_.stagnation_window) return false;
    return true;
  }

  /// Re-inserts the best-ever individual over the worst member when the
  /// population has lost it.
  void apply_elitism(std::vector<Individual>& pop) const {
    if (!config_.elitism || pop.empty() || !evaluator_.has_best()) return;
    const Individual& elite = evaluator_.best();
    auto cmp = [&](const Individual& a, const Individual& b) {
      return better(a.penalized_fitness, b.penalized_fitness, sense());
    };
    auto best_it = std::min_element(pop.begin(), pop.end(), cmp);
    if (!better(elite.penalized_fitness, best_it->penalized_fitness, sense())) return;
    auto worst_it = std::max_element(pop.begin(), pop.end(), cmp);
    *worst_it = elite;
  }

  void end_iteration() {
    ++iterations_;
    const double best = evaluator_.best().penalized_fitness;
    if (!trace_.empty() && best == trace_.back().best)
      ++stagnant_;
    else
      stagnant_ = 0;
    trace_.push_back({iterations_, best});
  }

  RunResult finish() {
    RunResult result;
    const ProblemSpec& problem = evaluator_.problem();
    result.best = evaluator_.best();
    result.best.position = snap_to_kind(result.best.position, problem.kinds, problem.bounds);
    result.trace = std::move(trace_);
    result.evaluations = evaluator_.count();
    result.iterations = iterations_;
    return result;
  }

 private:
  const RunConfig& config_;
  Evaluator evaluator_;
  Trace trace_;
  std::size_t iterations_ = 0;
  std::size_t stagnant_ = 0;
};

/// One sweep of pairwise attraction. Every move is re-evaluated immediately;
/// a firefly that found nobody brighter takes a pure random step.
void firefly_pass(std::vector<Individual>& pop, Evaluator& evaluator,
                  const FireflyParams& params, RngStream& rng) {
  const Bounds& bounds = evaluator.problem().bounds;
  const Sense sense = evaluator.sense();
  const std::size_t n = pop.size();
  for (std::size_t i = 0; i < n; ++i) {
    bool moved = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (evaluator.exhausted()) return;
      if (!better(pop[j].penalized_fitness, pop[i].penalized_fitness, sense)) continue;
      RealVector next = firefly_move(pop[i].position, pop[j].position, params, rng);
      bounds.clamp(next);
      pop[i].position = std::move(next);
      evaluator.evaluate(pop[i]);
      moved = true;
    }
    if (!moved) {
      if (evaluator.exhausted()) return;
      RealVector next = firefly_random_walk(pop[i].position, params, rng);
      bounds.clamp(next);
      pop[i].position = std::move(next);
      evaluator.evaluate(pop[i]);
    }
  }
}

double draw_mixing(const GeneticParams& params, RngStream& rng) {
  return params.mixing_alpha ? *params.mixing_alpha : rng.uniform();
}

/// Population indices ordered worst first; ties broken by higher index first
/// so that earlier members are kept.
std::vector<std::size_t> worst_first(const std::vector<Individual>& pop, Sense sense) {
  std::vector<std::size_t> order(pop.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double fa = pop[a].penalized_fitness;
    const double fb = pop[b].penalized_fitness;
    if (fa != fb) return better(fb, fa, sense);
    return a > b;
  });
  return order;
}

/// Crossover, mutation and worst-replacement stage of the hybrid.
void genetic_stage(std::vector<Individual>& pop, Evaluator& evaluator,
                   const GeneticParams& params, const RealVector& sigma, RngStream& rng) {
  const Sense sense = evaluator.sense();
  const Bounds& bounds = evaluator.problem().bounds;
  const std::size_t n = pop.size();
  if (n < 2) return;
  const std::size_t tsize = std::min(params.tournament_size, n);

  struct Child {
    Individual ind;
    bool survivor;
  };
  std::vector<Child> children;
  const std::size_t pairs = n / 2;
  for (std::size_t k = 0; k < pairs; ++k) {
    if (evaluator.exhausted()) break;
    if (!rng.chance(params.crossover_rate)) continue;
    const std::size_t a = tournament_select(pop, tsize, rng, sense);
    const std::size_t b = tournament_select(pop, tsize, rng, sense);
    Individual child;
    child.position = blend_crossover(pop[a].position, pop[b].position, draw_mixing(params, rng));
    bounds.clamp(child.position);
    evaluator.evaluate(child);
    const bool survives = better(child.penalized_fitness, pop[a].penalized_fitness, sense) &&
                          better(child.penalized_fitness, pop[b].penalized_fitness, sense);
    if (survives || params.mutation_scope == MutationScope::all_children)
      children.push_back({std::move(child), survives});
  }

  std::vector<Individual> replacements;
  for (auto& [child, survivor] : children) {
    const bool mutate = rng.chance(params.mutation_rate);
    if (mutate && !evaluator.exhausted()) {
      child.position = gaussian_mutate(child.position, sigma, rng, bounds);
      evaluator.evaluate(child);
      replacements.push_back(std::move(child));
    } else if (survivor) {
      replacements.push_back(std::move(child));
    }
  }
  if (replacements.empty()) return;

  const auto order = worst_first(pop, sense);
  const std::size_t count = std::min(replacements.size(), n);
  for (std::size_t r = 0; r < count; ++r) pop[order[r]] = std::move(replacements[r]);
}

}  // namespace

RunResult fa_run(const ProblemSpec& problem, const FireflyParams& fparams,
                 const RunConfig& config, const PenaltyConfig& penalty, RngStream& rng) {
  fparams.validate();
  RunLoop loop(problem, config, penalty);
  auto pop = loop.initial_population(rng);
  while (loop.should_continue()) {
    firefly_pass(pop, loop.evaluator(), fparams, rng);
    loop.apply_elitism(pop);
    loop.end_iteration();
  }
  return loop.finish();
}

RunResult ga_run(const ProblemSpec& problem, const GeneticParams& gparams,
                 const RunConfig& config, const PenaltyConfig& penalty, RngStream& rng) {
  gparams.validate();
  RunLoop loop(problem, config, penalty);
  Evaluator& evaluator = loop.evaluator();
  const Sense sense = loop.sense();
  const Bounds& bounds = problem.bounds;
  const RealVector sigma = gparams.sigma_for(bounds);

  auto pop = loop.initial_population(rng);
  const std::size_t n = pop.size();
  const std::size_t tsize = std::min(gparams.tournament_size, n);
  auto best_of = [&](const std::vector<Individual>& p) {
    double best = p.front().penalized_fitness;
    for (const auto& ind : p)
      if (better(ind.penalized_fitness, best, sense)) best = ind.penalized_fitness;
    return best;
  };

  while (loop.should_continue()) {
    std::vector<Individual> next = pop;
    for (std::size_t k = 0; k < std::max<std::size_t>(1, n / 2); ++k) {
      if (evaluator.exhausted()) break;
      if (!rng.chance(gparams.crossover_rate)) continue;
      const std::size_t a = tournament_select(pop, tsize, rng, sense);
      const std::size_t b = tournament_select(pop, tsize, rng, sense);
      Individual child;
      child.position = blend_crossover(pop[a].position, pop[b].position, draw_mixing(gparams, rng));
      bounds.clamp(child.position);
      evaluator.evaluate(child);
      const double fa = pop[a].penalized_fitness;
      const double fb = pop[b].penalized_fitness;
      if (better(child.penalized_fitness, fa, sense) && better(child.penalized_fitness, fb, sense))
        next[better(fa, fb, sense) ? b : a] = std::move(child);
    }
    for (auto& ind : next) {
      if (evaluator.exhausted()) break;
      if (!rng.chance(gparams.mutation_rate)) continue;
      ind.position = gaussian_mutate(ind.position, sigma, rng, bounds);
      evaluator.evaluate(ind);
    }
    // the new generation is only accepted when it improves on the old best
    if (better(best_of(next), best_of(pop), sense)) pop = std::move(next);
    loop.apply_elitism(pop);
    loop.end_iteration();
  }
  return loop.finish();
}

RunResult faga_run(const ProblemSpec& problem, const FireflyParams& fparams,
                   const GeneticParams& gparams, const RunConfig& config,
                   const PenaltyConfig& penalty, RngStream& rng) {
  fparams.validate();
  gparams.validate();
  RunLoop loop(problem, config, penalty);
  const RealVector sigma = gparams.sigma_for(problem.bounds);
  auto pop = loop.initial_population(rng);
  while (loop.should_continue()) {
    firefly_pass(pop, loop.evaluator(), fparams, rng);
    genetic_stage(pop, loop.evaluator(), gparams, sigma, rng);
    loop.apply_elitism(pop);
    loop.end_iteration();
  }
  return loop.finish();
}

}  // namespace faga
