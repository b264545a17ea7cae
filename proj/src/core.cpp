#include "faga/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace faga {

Bounds::Bounds(RealVector lo, RealVector hi) : lower(std::move(lo)), upper(std::move(hi)) {}

Bounds Bounds::uniform(std::size_t dimension, double lo, double hi) {
  return Bounds(RealVector(dimension, lo), RealVector(dimension, hi));
}

void Bounds::validate() const {
  if (lower.size() != upper.size())
    throw ConfigError("bounds: lower and upper have different lengths");
  if (lower.empty()) throw ConfigError("bounds: dimension must be positive");
  for (std::size_t k = 0; k < lower.size(); ++k) {
    if (!(lower[k] <= upper[k]))
      throw ConfigError("bounds: lower > upper at coordinate " + std::to_string(k));
  }
}

double Bounds::clamp(std::size_t k, double value) const {
  return std::clamp(value, lower[k], upper[k]);
}

void Bounds::clamp(std::span<double> x) const {
  for (std::size_t k = 0; k < x.size(); ++k) x[k] = clamp(k, x[k]);
}

void ProblemSpec::validate() const {
  bounds.validate();
  if (!objective) throw ConfigError(name + ": missing objective");
  if (!kinds.empty() && kinds.size() != bounds.dimension())
    throw ConfigError(name + ": kinds length does not match dimension");
  for (std::size_t k = 0; k < kinds.size(); ++k) {
    if (kinds[k].kind != Kind::discrete) continue;
    const auto& values = kinds[k].allowed;
    if (values.empty()) throw ConfigError(name + ": empty discrete set");
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i > 0 && !(values[i - 1] < values[i]))
        throw ConfigError(name + ": discrete set not strictly increasing");
      if (values[i] < bounds.lower[k] || values[i] > bounds.upper[k])
        throw ConfigError(name + ": discrete value outside bounds");
    }
  }
}

std::size_t RngStream::index(std::size_t n) {
  if (n == 0) throw std::invalid_argument("RngStream::index: empty range");
  const std::uint64_t range = n;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t draw;
  do {
    draw = engine_();
  } while (draw >= limit);
  return static_cast<std::size_t>(draw % range);
}

double RngStream::normal(double mean, double stddev) {
  // Box-Muller, one variate per call so the stream layout is easy to reason about.
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  return mean + stddev * z;
}

bool RngStream::chance(double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return uniform() < p;
}

namespace {

double snap_discrete(double value, const std::vector<double>& allowed) {
  auto it = std::lower_bound(allowed.begin(), allowed.end(), value);
  if (it == allowed.begin()) return allowed.front();
  if (it == allowed.end()) return allowed.back();
  const double above = *it;
  const double below = *(it - 1);
  return (above - value) < (value - below) ? above : below;
}

}  // namespace

RealVector snap_to_kind(std::span<const double> position, const VariableKinds& kinds,
                        const Bounds& bounds) {
  RealVector out(position.begin(), position.end());
  if (kinds.empty()) return out;
  if (kinds.size() != position.size())
    throw std::invalid_argument("snap_to_kind: kinds length mismatch");
  for (std::size_t k = 0; k < out.size(); ++k) {
    switch (kinds[k].kind) {
      case Kind::continuous:
        break;
      case Kind::integer: {
        double r = std::round(out[k]);
        if (k < bounds.dimension()) {
          // keep the result integral even when a bound is fractional
          double lo = std::ceil(bounds.lower[k]);
          double hi = std::floor(bounds.upper[k]);
          if (lo <= hi) r = std::clamp(r, lo, hi);
        }
        out[k] = r;
        break;
      }
      case Kind::discrete:
        out[k] = snap_discrete(out[k], kinds[k].allowed);
        break;
      case Kind::binary:
        out[k] = out[k] >= 0.5 ? 1.0 : 0.0;
        break;
    }
  }
  return out;
}

TrialStats aggregate_trials(std::span<const double> trial_bests,
                            std::span<const std::uint64_t> eval_counts,
                            std::span<const double> times, std::vector<Trace> traces,
                            Sense sense) {
  const std::size_t n = trial_bests.size();
  if (n == 0) throw std::invalid_argument("aggregate_trials: no trials");
  if (eval_counts.size() != n || times.size() != n)
    throw std::invalid_argument("aggregate_trials: list lengths differ");
  if (!traces.empty() && traces.size() != n)
    throw std::invalid_argument("aggregate_trials: trace count differs");

  TrialStats stats;
  stats.trial_bests.assign(trial_bests.begin(), trial_bests.end());
  auto [lo, hi] = std::minmax_element(trial_bests.begin(), trial_bests.end());
  stats.best = sense == Sense::minimize ? *lo : *hi;
  stats.worst = sense == Sense::minimize ? *hi : *lo;
  if (*lo == *hi) {
    // exact, rather than whatever the summation rounds to
    stats.mean = *lo;
    stats.std_dev = 0.0;
  } else {
    stats.mean = std::accumulate(trial_bests.begin(), trial_bests.end(), 0.0) / n;
    double ss = 0.0;
    for (double b : trial_bests) ss += (b - stats.mean) * (b - stats.mean);
    stats.std_dev = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
  }

  double evals = 0.0;
  for (auto e : eval_counts) evals += static_cast<double>(e);
  stats.avg_function_evals = evals / n;
  stats.total_time_s = std::accumulate(times.begin(), times.end(), 0.0);
  stats.avg_time_s = stats.total_time_s / n;
  stats.traces = std::move(traces);
  return stats;
}

}  // namespace faga
