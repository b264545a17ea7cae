#include "faga/penalty.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace faga {

double violation_sum(std::span<const double> g_values, std::span<const double> h_values) {
  double total = 0.0;
  for (double g : g_values) total += std::max(0.0, g);
  for (double h : h_values) total += std::abs(h);
  return total;
}

double penalize(double raw, std::span<const double> g_values, std::span<const double> h_values,
                const PenaltyConfig& config, Sense sense) {
  const double violation = violation_sum(g_values, h_values);
  if (violation == 0.0 || config.theta == 0.0) return raw;
  const double pf = config.theta * violation;
  return sense == Sense::minimize ? raw + pf : raw - pf;
}

Evaluation evaluate_penalized(const ProblemSpec& problem, std::span<const double> x,
                              const PenaltyConfig& config) {
  std::vector<double> g;
  std::vector<double> h;
  g.reserve(problem.inequality.size());
  h.reserve(problem.equality.size());
  for (const auto& c : problem.inequality) g.push_back(c(x));
  for (const auto& c : problem.equality) h.push_back(c(x));
  const double raw = problem.objective(x);
  return {raw, penalize(raw, g, h, config, problem.sense), violation_sum(g, h)};
}

}  // namespace faga
