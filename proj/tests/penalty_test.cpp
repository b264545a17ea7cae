#include <gtest/gtest.h>

#include <vector>

#include "faga/penalty.hpp"

namespace faga {
namespace {

TEST(ViolationSum, Examples) {
  EXPECT_EQ(violation_sum(std::vector<double>{-1, -5}, {}), 0.0);
  EXPECT_EQ(violation_sum(std::vector<double>{2, -1}, {}), 2.0);
  EXPECT_EQ(violation_sum({}, std::vector<double>{0.5, -0.25}), 0.75);
}

TEST(Penalize, Examples) {
  EXPECT_EQ(penalize(10, std::vector<double>{-1}, {}, {1000}, Sense::minimize), 10.0);
  EXPECT_EQ(penalize(10, std::vector<double>{2}, {}, {10}, Sense::minimize), 30.0);
  EXPECT_EQ(penalize(100, std::vector<double>{3}, {}, {5}, Sense::maximize), 85.0);
}

TEST(Penalize, IdentityWhenFeasibleOrDisabled) {
  for (double raw : {-3.0, 0.0, 17.5}) {
    EXPECT_EQ(penalize(raw, std::vector<double>{-1, 0}, std::vector<double>{0}, {1e6},
                       Sense::minimize),
              raw);
    EXPECT_EQ(penalize(raw, std::vector<double>{4}, {}, {0.0}, Sense::maximize), raw);
  }
}

TEST(Penalize, MonotoneInViolation) {
  double prev_min = penalize(1.0, std::vector<double>{0.0}, {}, {7}, Sense::minimize);
  double prev_max = penalize(1.0, std::vector<double>{0.0}, {}, {7}, Sense::maximize);
  for (double g = 0.25; g <= 5.0; g += 0.25) {
    const double mn = penalize(1.0, std::vector<double>{g, -2}, {}, {7}, Sense::minimize);
    const double mx = penalize(1.0, std::vector<double>{g, -2}, {}, {7}, Sense::maximize);
    EXPECT_GT(mn, prev_min);
    EXPECT_LT(mx, prev_max);
    prev_min = mn;
    prev_max = mx;
  }
}

TEST(Penalize, FeasibleDominanceAtLargeTheta) {
  // max x + y on the integer grid [0,4]^2 subject to x + 2y <= 5
  ProblemSpec p;
  p.name = "grid";
  p.sense = Sense::maximize;
  p.objective = [](std::span<const double> x) { return x[0] + x[1]; };
  p.inequality = {[](std::span<const double> x) { return x[0] + 2 * x[1] - 5; }};
  p.bounds = Bounds({0, 0}, {4, 4});
  const PenaltyConfig big{100.0};
  double worst_feasible = 1e300, best_infeasible = -1e300;
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b) {
      const std::vector<double> x{double(a), double(b)};
      const auto e = evaluate_penalized(p, x, big);
      if (e.violation == 0.0)
        worst_feasible = std::min(worst_feasible, e.penalized);
      else
        best_infeasible = std::max(best_infeasible, e.penalized);
    }
  EXPECT_GT(worst_feasible, best_infeasible);
}

TEST(PenaltyConfig, RejectsNegativeTheta) {
  EXPECT_THROW(PenaltyConfig{-1.0}.validate(), ConfigError);
  EXPECT_NO_THROW(PenaltyConfig{0.0}.validate());
}

}  // namespace
}  // namespace faga
