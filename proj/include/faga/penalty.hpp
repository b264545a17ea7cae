#ifndef FAGA_PENALTY_HPP
#define FAGA_PENALTY_HPP

#include <span>

#include "faga/core.hpp"

namespace faga {

/// Static penalty coefficient. Zero disables penalization.
struct PenaltyConfig {
  double theta = 1e6;

  void validate() const {
    if (!(theta >= 0.0)) throw ConfigError("penalty theta must be non-negative");
  }
};

/// Sum of max(0, g_i) over inequalities plus |h_j| over equalities.
double violation_sum(std::span<const double> g_values, std::span<const double> h_values);

/// raw + theta * violation for minimization, raw - theta * violation for
/// maximization. Returns raw unchanged when nothing is violated.
double penalize(double raw, std::span<const double> g_values, std::span<const double> h_values,
                const PenaltyConfig& config, Sense sense);

/// Evaluates objective and constraints of `problem` at `x` and returns the
/// raw objective and the penalized value.
struct Evaluation {
  double raw;
  double penalized;
  double violation;
};
Evaluation evaluate_penalized(const ProblemSpec& problem, std::span<const double> x,
                              const PenaltyConfig& config);

}  // namespace faga

#endif  // FAGA_PENALTY_HPP
