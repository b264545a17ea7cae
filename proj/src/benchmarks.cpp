#include "faga/benchmarks.hpp"

#include <cmath>
#include <numbers>

namespace faga {

std::string_view benchmark_name(BenchmarkId id) {
  switch (id) {
    case BenchmarkId::sphere: return "sphere";
    case BenchmarkId::ackley: return "ackley";
    case BenchmarkId::rosenbrock: return "rosenbrock";
    case BenchmarkId::rastrigin: return "rastrigin";
  }
  return "unknown";
}

std::optional<BenchmarkId> parse_benchmark(std::string_view name) {
  for (auto id : kAllBenchmarks)
    if (benchmark_name(id) == name) return id;
  return std::nullopt;
}

BenchmarkBox benchmark_box(BenchmarkId id) {
  switch (id) {
    case BenchmarkId::sphere:
    case BenchmarkId::rastrigin: return {-5.12, 5.12};
    case BenchmarkId::ackley: return {-15.0, 30.0};
    case BenchmarkId::rosenbrock: return {-5.0, 10.0};
  }
  return {0.0, 0.0};
}

namespace {

double sphere(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

double ackley(std::span<const double> x) {
  const double n = static_cast<double>(x.size());
  double sq = 0.0;
  double cs = 0.0;
  for (double v : x) {
    sq += v * v;
    cs += std::cos(2.0 * std::numbers::pi * v);
  }
  const double value =
      -20.0 * std::exp(-0.2 * std::sqrt(sq / n)) - std::exp(cs / n) + 20.0 + std::numbers::e;
  // the two exponentials cancel to within rounding at the origin
  return value < 0.0 ? 0.0 : value;
}

double rosenbrock(std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double a = x[i + 1] - x[i] * x[i];
    const double b = x[i] - 1.0;
    s += 100.0 * a * a + b * b;
  }
  return s;
}

double rastrigin(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v - 10.0 * std::cos(2.0 * std::numbers::pi * v) + 10.0;
  return s;
}

}  // namespace

double eval_benchmark(BenchmarkId id, std::span<const double> x) {
  switch (id) {
    case BenchmarkId::sphere: return sphere(x);
    case BenchmarkId::ackley: return ackley(x);
    case BenchmarkId::rosenbrock: return rosenbrock(x);
    case BenchmarkId::rastrigin: return rastrigin(x);
  }
  return 0.0;
}

ProblemSpec make_benchmark(BenchmarkId id, std::size_t dimension) {
  if (dimension < 1) throw ConfigError("benchmark dimension must be >= 1");
  const auto box = benchmark_box(id);
  ProblemSpec p;
  p.name = std::string(benchmark_name(id));
  p.objective = [id](std::span<const double> x) { return eval_benchmark(id, x); };
  p.bounds = Bounds::uniform(dimension, box.lower, box.upper);
  p.sense = Sense::minimize;
  p.known_optimum = 0.0;
  return p;
}

}  // namespace faga
