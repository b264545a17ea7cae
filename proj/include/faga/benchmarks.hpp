#ifndef FAGA_BENCHMARKS_HPP
#define FAGA_BENCHMARKS_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "faga/core.hpp"

namespace faga {

enum class BenchmarkId { sphere, ackley, rosenbrock, rastrigin };

inline constexpr BenchmarkId kAllBenchmarks[] = {BenchmarkId::sphere, BenchmarkId::ackley,
                                                 BenchmarkId::rosenbrock, BenchmarkId::rastrigin};

std::string_view benchmark_name(BenchmarkId id);
std::optional<BenchmarkId> parse_benchmark(std::string_view name);

/// Search box shared by every coordinate.
struct BenchmarkBox {
  double lower;
  double upper;
};
BenchmarkBox benchmark_box(BenchmarkId id);

double eval_benchmark(BenchmarkId id, std::span<const double> x);

/// Unconstrained minimization problem with the standard box; global minimum 0.
ProblemSpec make_benchmark(BenchmarkId id, std::size_t dimension);

}  // namespace faga

#endif  // FAGA_BENCHMARKS_HPP
