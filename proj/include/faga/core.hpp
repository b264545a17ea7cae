#ifndef FAGA_CORE_HPP
#define FAGA_CORE_HPP

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace faga {

/// Raised for invalid problem definitions, parameters or run configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using RealVector = std::vector<double>;
using BitVector = std::vector<std::uint8_t>;

enum class Sense { minimize, maximize };

/// True when `a` is strictly better than `b` under `sense`.
inline bool better(double a, double b, Sense sense) {
  return sense == Sense::minimize ? a < b : a > b;
}

struct Bounds {
  RealVector lower;
  RealVector upper;

  Bounds() = default;
  Bounds(RealVector lo, RealVector hi);
  /// Same interval on every one of `dimension` coordinates.
  static Bounds uniform(std::size_t dimension, double lo, double hi);

  std::size_t dimension() const { return lower.size(); }
  /// Throws ConfigError when lengths differ or some lower > upper.
  void validate() const;
  double clamp(std::size_t k, double value) const;
  void clamp(std::span<double> x) const;
};

enum class Kind { continuous, integer, discrete, binary };

/// Variable typing for one coordinate. `allowed` is only used by discrete.
struct VariableKind {
  Kind kind = Kind::continuous;
  std::vector<double> allowed;

  static VariableKind continuous() { return {}; }
  static VariableKind integer() { return {Kind::integer, {}}; }
  static VariableKind binary() { return {Kind::binary, {}}; }
  static VariableKind discrete(std::vector<double> values) {
    return {Kind::discrete, std::move(values)};
  }
};

using VariableKinds = std::vector<VariableKind>;

using ObjectiveFn = std::function<double(std::span<const double>)>;
using ConstraintFn = std::function<double(std::span<const double>)>;

struct ProblemSpec {
  std::string name;
  ObjectiveFn objective;
  std::vector<ConstraintFn> inequality;  // satisfied when <= 0
  std::vector<ConstraintFn> equality;    // satisfied when == 0
  Bounds bounds;
  VariableKinds kinds;  // empty means all continuous
  Sense sense = Sense::minimize;
  std::optional<double> known_optimum;

  std::size_t dimension() const { return bounds.dimension(); }
  /// Checks bounds, kinds length and discrete-set well-formedness.
  void validate() const;
};

inline constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

struct Individual {
  RealVector position;
  BitVector bits;  // binary problems only
  double fitness = kUnset;
  double penalized_fitness = kUnset;
};

/// Anything that yields uniform doubles in [0, 1).
template <typename R>
concept UniformSource = requires(R& r) {
  { r.uniform() } -> std::convertible_to<double>;
};

/// Seeded 64-bit Mersenne Twister. Trial t of a plan uses seed base + t.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform integer in [0, n). Requires n >= 1.
  std::size_t index(std::size_t n);
  double normal(double mean, double stddev);
  /// Bernoulli draw that consumes no randomness when p <= 0 or p >= 1.
  bool chance(double p);

  RngStream split(std::uint64_t offset) const { return RngStream(seed_ + offset); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Uniform random population inside `bounds`. Fitness stays unset.
template <UniformSource R>
std::vector<Individual> init_population(const Bounds& bounds, std::size_t n, R& rng) {
  if (n == 0) throw ConfigError("population size must be at least 1");
  bounds.validate();
  std::vector<Individual> population(n);
  for (auto& ind : population) {
    ind.position.resize(bounds.dimension());
    for (std::size_t k = 0; k < bounds.dimension(); ++k) {
      double u = rng.uniform();
      ind.position[k] = bounds.lower[k] + u * (bounds.upper[k] - bounds.lower[k]);
    }
  }
  return population;
}

/// Maps a position onto the variable kinds. Integer and discrete values are
/// rounded to the nearest admissible value (discrete ties go to the smaller
/// member), binary coordinates are thresholded at 0.5.
RealVector snap_to_kind(std::span<const double> position, const VariableKinds& kinds,
                        const Bounds& bounds);

struct TracePoint {
  std::size_t iteration;
  double best;
};
using Trace = std::vector<TracePoint>;

struct TrialStats {
  double best = kUnset;
  double mean = kUnset;
  double worst = kUnset;
  double std_dev = kUnset;
  double avg_function_evals = 0.0;
  double total_time_s = 0.0;
  double avg_time_s = 0.0;
  std::vector<double> trial_bests;
  std::vector<Trace> traces;
};

/// Summary over repeated trials; sample standard deviation (n - 1 divisor,
/// zero for a single trial).
TrialStats aggregate_trials(std::span<const double> trial_bests,
                            std::span<const std::uint64_t> eval_counts,
                            std::span<const double> times, std::vector<Trace> traces,
                            Sense sense);

}  // namespace faga

#endif  // FAGA_CORE_HPP
