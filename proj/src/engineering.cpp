#include "faga/engineering.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace faga::engineering {

namespace {
constexpr double kPi = std::numbers::pi;
}

const std::vector<double>& wire_diameter_catalog() {
  static const std::vector<double> catalog = {
      0.0090, 0.0095, 0.0104, 0.0118, 0.0128, 0.0132, 0.0150, 0.0162, 0.0173,
      0.0180, 0.0200, 0.0230, 0.0280, 0.0320, 0.0350, 0.0410, 0.0470, 0.0540,
      0.0720, 0.0800, 0.0920, 0.1050, 0.1200, 0.1350, 0.1620, 0.1770, 0.1920,
      0.2070, 0.2250, 0.2440, 0.2830, 0.3070, 0.3310, 0.3620, 0.3940};
  return catalog;
}

Evaluated<8> spring_evaluate(double d, double D, double N) {
  using C = SpringConstants;
  const double index = D / d;
  const double wahl = (4.0 * index - 1.0) / (4.0 * index - 4.0) + 0.615 / index;
  const double rate = C::shear_modulus * std::pow(d, 4) / (8.0 * N * std::pow(D, 3));
  const double preload_deflection = C::preload / rate;
  const double free_length = C::p_max / rate + 1.05 * (N + 2.0) * d;

  Evaluated<8> out{};
  out.objective = kPi * kPi * D * d * d * (N + 2.0) / 4.0;
  out.g[0] = 8.0 * wahl * C::p_max * D / (kPi * std::pow(d, 3)) - C::shear_max;
  out.g[1] = free_length - C::free_length_max;
  out.g[2] = C::wire_min - d;
  out.g[3] = (d + D) - C::outer_diameter_max;
  out.g[4] = 3.0 - index;
  out.g[5] = preload_deflection - C::preload_deflection_max;
  // The free-length consistency constraint reduces to 0 <= 0 once L_f is
  // defined as above; the slot is kept so indices line up with g1..g8.
  out.g[6] = 0.0;
  out.g[7] = C::working_deflection - (C::p_max - C::preload) / rate;
  return out;
}

Evaluated<4> vessel_evaluate(double x1, double x2, double x3, double x4) {
  Evaluated<4> out{};
  out.objective = 0.6224 * x1 * x3 * x4 + 1.7781 * x2 * x3 * x3 + 3.1661 * x1 * x1 * x4 +
                  19.84 * x1 * x1 * x3;
  out.g[0] = -x1 + 0.0193 * x3;
  out.g[1] = -x2 + 0.00954 * x3;
  out.g[2] = -kPi * x3 * x3 * x4 - (4.0 / 3.0) * kPi * x3 * x3 * x3 + 750.0 * 1728.0;
  out.g[3] = x4 - 240.0;
  return out;
}

Evaluated<1> cantilever_evaluate(std::span<const double> x) {
  if (x.size() != 5) throw std::invalid_argument("cantilever_evaluate: expects 5 variables");
  Evaluated<1> out{};
  out.objective = 0.0624 * (x[0] + x[1] + x[2] + x[3] + x[4]);
  out.g[0] = 61.0 / std::pow(x[0], 3) + 37.0 / std::pow(x[1], 3) + 19.0 / std::pow(x[2], 3) +
             7.0 / std::pow(x[3], 3) + 1.0 / std::pow(x[4], 3) - 1.0;
  return out;
}

double geartrain_evaluate(int za, int zb, int zc, int zd) {
  for (int z : {za, zb, zc, zd})
    if (z < 12 || z > 60)
      throw std::out_of_range("geartrain_evaluate: tooth count " + std::to_string(z) +
                              " outside [12, 60]");
  const double ratio = static_cast<double>(za) * zb / (static_cast<double>(zc) * zd);
  const double err = 1.0 / 6.931 - ratio;
  return err * err;
}

Evaluated<2> ibeam_evaluate(double h, double b, double tw, double tf) {
  const double web = h - 2.0 * tf;
  const double inertia = tw * web * web * web / 12.0 + b * tf * tf * tf / 6.0 +
                         2.0 * b * tf * std::pow((h - tf) / 2.0, 2);
  Evaluated<2> out{};
  out.objective = 5000.0 / inertia;
  out.g[0] = 2.0 * b * tw + tw * web - 300.0;
  out.g[1] = 18.0 * h * 1e4 / (tw * web * web * web + 2.0 * b * tw * (4.0 * tf * tf + 3.0 * h * web)) +
             15.0 * b * 1e3 / (web * tw * tw * tw + 2.0 * b * b * b * tw) - 56.0;
  return out;
}

std::string_view problem_name(ProblemId id) {
  switch (id) {
    case ProblemId::spring: return "spring";
    case ProblemId::vessel: return "vessel";
    case ProblemId::cantilever: return "cantilever";
    case ProblemId::geartrain: return "geartrain";
    case ProblemId::ibeam: return "ibeam";
  }
  return "unknown";
}

std::optional<ProblemId> parse_problem(std::string_view name) {
  for (auto id : kAllProblems)
    if (problem_name(id) == name) return id;
  return std::nullopt;
}

namespace {

template <std::size_t N, typename F>
void add_constraints(ProblemSpec& p, F evaluate) {
  for (std::size_t i = 0; i < N; ++i)
    p.inequality.push_back([evaluate, i](std::span<const double> x) { return evaluate(x).g[i]; });
}

std::vector<double> plate_thicknesses() {
  std::vector<double> out;
  for (int k = 1; k <= 99; ++k) out.push_back(0.0625 * k);
  return out;
}

}  // namespace

ProblemSpec make_problem(ProblemId id) {
  ProblemSpec p;
  p.name = std::string(problem_name(id));
  p.sense = Sense::minimize;
  switch (id) {
    case ProblemId::spring: {
      auto eval = [](std::span<const double> x) { return spring_evaluate(x[0], x[1], x[2]); };
      const auto& catalog = wire_diameter_catalog();
      p.objective = [eval](std::span<const double> x) { return eval(x).objective; };
      add_constraints<8>(p, eval);
      p.bounds = Bounds({catalog.front(), 0.6, 1.0}, {catalog.back(), 3.0, 70.0});
      p.kinds = {VariableKind::discrete(catalog), VariableKind::continuous(),
                 VariableKind::integer()};
      p.known_optimum = 2.6586;
      break;
    }
    case ProblemId::vessel: {
      auto eval = [](std::span<const double> x) { return vessel_evaluate(x[0], x[1], x[2], x[3]); };
      p.objective = [eval](std::span<const double> x) { return eval(x).objective; };
      add_constraints<4>(p, eval);
      const auto plates = plate_thicknesses();
      p.bounds = Bounds({plates.front(), plates.front(), 10.0, 10.0},
                        {plates.back(), plates.back(), 200.0, 200.0});
      p.kinds = {VariableKind::discrete(plates), VariableKind::discrete(plates),
                 VariableKind::continuous(), VariableKind::continuous()};
      p.known_optimum = 6059.714;
      break;
    }
    case ProblemId::cantilever: {
      auto eval = [](std::span<const double> x) { return cantilever_evaluate(x); };
      p.objective = [eval](std::span<const double> x) { return eval(x).objective; };
      add_constraints<1>(p, eval);
      p.bounds = Bounds::uniform(5, 0.01, 100.0);
      p.known_optimum = 1.3399;
      break;
    }
    case ProblemId::geartrain: {
      p.objective = [](std::span<const double> x) {
        return geartrain_evaluate(static_cast<int>(std::lround(x[0])),
                                  static_cast<int>(std::lround(x[1])),
                                  static_cast<int>(std::lround(x[2])),
                                  static_cast<int>(std::lround(x[3])));
      };
      p.bounds = Bounds::uniform(4, 12.0, 60.0);
      p.kinds = VariableKinds(4, VariableKind::integer());
      p.known_optimum = 2.7e-12;
      break;
    }
    case ProblemId::ibeam: {
      auto eval = [](std::span<const double> x) { return ibeam_evaluate(x[0], x[1], x[2], x[3]); };
      p.objective = [eval](std::span<const double> x) { return eval(x).objective; };
      add_constraints<2>(p, eval);
      p.bounds = Bounds({10.0, 10.0, 0.9, 0.9}, {80.0, 50.0, 5.0, 5.0});
      p.known_optimum = 0.006625;
      break;
    }
  }
  return p;
}

}  // namespace faga::engineering
