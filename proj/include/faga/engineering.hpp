#ifndef FAGA_ENGINEERING_HPP
#define FAGA_ENGINEERING_HPP

#include <array>
#include <optional>
#include <string_view>

#include "faga/core.hpp"

namespace faga::engineering {

/// Helical compression spring constants (lb, in, psi).
struct SpringConstants {
  static constexpr double p_max = 1000.0;
  static constexpr double shear_max = 189.0e3;
  static constexpr double elastic_modulus = 30.0e6;
  static constexpr double shear_modulus = 11.5e6;
  static constexpr double free_length_max = 14.0;
  static constexpr double wire_min = 0.2;
  static constexpr double outer_diameter_max = 3.0;
  static constexpr double preload = 300.0;
  static constexpr double preload_deflection_max = 6.0;
  static constexpr double working_deflection = 1.25;
};

/// The 35 admissible wire diameters, ascending.
const std::vector<double>& wire_diameter_catalog();

template <std::size_t N>
struct Evaluated {
  double objective;
  std::array<double, N> g;  // <= 0 when satisfied
};

/// Volume and the eight constraint values for wire diameter d, coil
/// diameter D and N active coils.
Evaluated<8> spring_evaluate(double d, double D, double N);

/// Cost of a cylindrical vessel with head/shell thicknesses x1, x2, radius x3
/// and length x4.
Evaluated<4> vessel_evaluate(double x1, double x2, double x3, double x4);

Evaluated<1> cantilever_evaluate(std::span<const double> x);

/// Squared error of the compound ratio za*zb/(zc*zd) against 1/6.931.
/// Throws std::out_of_range when a tooth count lies outside [12, 60].
double geartrain_evaluate(int za, int zb, int zc, int zd);

/// Vertical deflection of an I-section of height h, flange width b, web
/// thickness tw and flange thickness tf.
Evaluated<2> ibeam_evaluate(double h, double b, double tw, double tf);

enum class ProblemId { spring, vessel, cantilever, geartrain, ibeam };

inline constexpr ProblemId kAllProblems[] = {ProblemId::spring, ProblemId::vessel,
                                             ProblemId::cantilever, ProblemId::geartrain,
                                             ProblemId::ibeam};

std::string_view problem_name(ProblemId id);
std::optional<ProblemId> parse_problem(std::string_view name);

/// Constrained minimization problem with bounds and variable kinds.
ProblemSpec make_problem(ProblemId id);

}  // namespace faga::engineering

#endif  // FAGA_ENGINEERING_HPP
