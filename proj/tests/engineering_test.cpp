#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "faga/engineering.hpp"
#include "faga/penalty.hpp"

namespace faga::engineering {
namespace {

template <std::size_t N>
double max_g(const Evaluated<N>& e) {
  return *std::max_element(e.g.begin(), e.g.end());
}

TEST(Spring, TableValues) {
  const auto opt = spring_evaluate(0.2830, 1.2231, 9);
  EXPECT_NEAR(opt.objective, 2.6586, 5e-4);
  EXPECT_LE(max_g(opt), 1e-6);
  EXPECT_NEAR(spring_evaluate(0.2830, 1.180701, 10).objective, 2.7995, 5e-4);
  EXPECT_NEAR(spring_evaluate(0.2830, 1.1808, 10).objective, 2.8002, 5e-4);
}

TEST(Spring, Catalog) {
  const auto& c = wire_diameter_catalog();
  EXPECT_EQ(c.size(), 35u);
  EXPECT_TRUE(std::is_sorted(c.begin(), c.end()));
  EXPECT_NE(std::find(c.begin(), c.end(), 0.2830), c.end());
  const auto p = make_problem(ProblemId::spring);
  EXPECT_EQ(p.kinds[0].kind, Kind::discrete);
  EXPECT_EQ(p.kinds[2].kind, Kind::integer);
  EXPECT_EQ(p.inequality.size(), 8u);
}

TEST(Vessel, TableValues) {
  const auto opt = vessel_evaluate(0.8125, 0.4375, 42.0984, 176.6366);
  EXPECT_NEAR(opt.objective, 6059.9, 0.5);
  EXPECT_LE(opt.g[0], 1e-3);
  EXPECT_LE(opt.g[1], 1e-3);
  EXPECT_LE(opt.g[3], 1e-3);
  // the volume constraint is in cubic inches; 4-decimal rounding of x3, x4 leaves a few in^3
  EXPECT_LE(opt.g[2] / (750.0 * 1728.0), 1e-5);
  // 0.6224*48*112 + 1.7781*0.625*48^2 + 3.1661*112 + 19.84*48
  EXPECT_NEAR(vessel_evaluate(1.0, 0.625, 48, 112).objective, 7213.4096, 1e-9);
  EXPECT_NEAR(vessel_evaluate(0.193, 0.5, 10.0, 100).g[0], 0.0, 1e-12);
  const auto p = make_problem(ProblemId::vessel);
  EXPECT_EQ(p.kinds[0].kind, Kind::discrete);
  EXPECT_EQ(p.kinds[1].kind, Kind::discrete);
}

TEST(Cantilever, TableValues) {
  const std::vector<double> x{6.0089, 5.3049, 4.5023, 3.5077, 2.1504};
  const auto opt = cantilever_evaluate(x);
  EXPECT_NEAR(opt.objective, 1.3399, 1e-4);
  EXPECT_LE(opt.g[0], 0.0);
  EXPECT_GE(opt.g[0], -1e-3);
  for (double v : {0.5, 2.0, 7.0})
    EXPECT_NEAR(cantilever_evaluate(std::vector<double>(5, v)).objective, 0.312 * v, 1e-12);
  EXPECT_THROW(cantilever_evaluate(std::vector<double>(4, 1.0)), std::invalid_argument);
}

TEST(GearTrain, TableValues) {
  EXPECT_NEAR(geartrain_evaluate(16, 19, 43, 49), 2.7e-12, 1e-13);
  // (1/6.931 - 195/1353)^2
  EXPECT_NEAR(geartrain_evaluate(13, 15, 33, 41), 2.4073e-8, 1e-12);
  EXPECT_NEAR(geartrain_evaluate(18, 20, 58, 43), 4.5e-9, 1e-10);
  EXPECT_EQ(geartrain_evaluate(16, 19, 43, 49), geartrain_evaluate(19, 16, 43, 49));
  EXPECT_EQ(geartrain_evaluate(16, 19, 43, 49), geartrain_evaluate(16, 19, 49, 43));
  EXPECT_THROW(geartrain_evaluate(11, 19, 43, 49), std::out_of_range);
  EXPECT_THROW(geartrain_evaluate(16, 19, 43, 61), std::out_of_range);
}

TEST(GearTrain, ExhaustiveSearchFindsTableOptimum) {
  double best = 1e300;
  std::set<std::pair<int, int>> numer, denom;
  for (int a = 12; a <= 60; ++a)
    for (int b = 12; b <= 60; ++b)
      for (int c = 12; c <= 60; ++c)
        for (int d = 12; d <= 60; ++d) {
          const double f = geartrain_evaluate(a, b, c, d);
          if (f < best * (1 - 1e-12)) {
            best = f;
            numer.clear();
            denom.clear();
          }
          if (f <= best * (1 + 1e-12)) {
            numer.insert(std::minmax(a, b));
            denom.insert(std::minmax(c, d));
          }
        }
  EXPECT_NEAR(best, 2.7e-12, 1e-13);
  EXPECT_TRUE(numer.count({16, 19}));
  EXPECT_TRUE(denom.count({43, 49}));
}

TEST(IBeam, TableValues) {
  const auto opt = ibeam_evaluate(80, 50, 1.7647, 5.0);
  EXPECT_NEAR(opt.objective, 6.626e-3, 2e-6);
  EXPECT_NEAR(opt.g[0] + 300.0, 299.999, 1e-3);
  EXPECT_LE(max_g(opt), 1e-3);
  EXPECT_NEAR(ibeam_evaluate(80, 50, 0.9, 2.3216).objective, 1.307e-2, 1e-5);
}

TEST(Problems, ReportedOptimaAreFeasibleAndPositive) {
  const std::vector<std::pair<ProblemId, std::vector<double>>> points{
      {ProblemId::spring, {0.2830, 1.2231, 9}},
      {ProblemId::cantilever, {6.0089, 5.3049, 4.5023, 3.5077, 2.1504}},
      {ProblemId::geartrain, {16, 19, 43, 49}},
      {ProblemId::ibeam, {80, 50, 1.7647, 5.0}}};
  for (const auto& [id, x] : points) {
    const auto p = make_problem(id);
    EXPECT_GT(p.objective(x), 0.0) << problem_name(id);
    for (const auto& g : p.inequality) EXPECT_LE(g(x), 1e-3) << problem_name(id);
  }
}

TEST(Problems, Registry) {
  for (auto id : kAllProblems) {
    EXPECT_EQ(parse_problem(problem_name(id)), id);
    const auto p = make_problem(id);
    EXPECT_TRUE(p.known_optimum.has_value());
    EXPECT_TRUE(p.kinds.empty() || p.kinds.size() == p.dimension());
    EXPECT_NO_THROW(p.validate());
  }
  EXPECT_FALSE(parse_problem("bridge").has_value());
}

}  // namespace
}  // namespace faga::engineering
