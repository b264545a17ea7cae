#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "faga/core.hpp"
#include "faga/engineering.hpp"

namespace faga {
namespace {

struct ConstantSource {
  double value;
  double uniform() { return value; }
};

TEST(InitPopulation, ZeroWidthBoundsPinEveryone) {
  RngStream rng(1);
  auto pop = init_population(Bounds({3.0, 3.0}, {3.0, 3.0}), 5, rng);
  ASSERT_EQ(pop.size(), 5u);
  for (const auto& ind : pop) {
    EXPECT_EQ(ind.position, (RealVector{3.0, 3.0}));
    EXPECT_TRUE(std::isnan(ind.fitness));
  }
}

TEST(InitPopulation, StubbedSourceGivesMidpoint) {
  ConstantSource half{0.5};
  for (const auto& ind : init_population(Bounds({0.0}, {1.0}), 4, half))
    EXPECT_EQ(ind.position[0], 0.5);
}

TEST(InitPopulation, SampleMeanOfUnitInterval) {
  RngStream rng(42);
  auto pop = init_population(Bounds({0.0}, {1.0}), 10000, rng);
  double sum = 0.0;
  for (const auto& ind : pop) {
    ASSERT_GE(ind.position[0], 0.0);
    ASSERT_LT(ind.position[0], 1.0);
    sum += ind.position[0];
  }
  EXPECT_GE(sum / 10000.0, 0.48);
  EXPECT_LE(sum / 10000.0, 0.52);
}

TEST(InitPopulation, RejectsBadInput) {
  RngStream rng(1);
  EXPECT_THROW(init_population(Bounds({0.0}, {1.0}), 0, rng), ConfigError);
  EXPECT_THROW(init_population(Bounds({2.0}, {1.0}), 3, rng), ConfigError);
  EXPECT_THROW(init_population(Bounds({0.0, 0.0}, {1.0}), 3, rng), ConfigError);
}

TEST(InitPopulation, StaysInsideBounds) {
  RngStream rng(9);
  Bounds b({-5.0, 0.0, 100.0}, {5.0, 1e-9, 200.0});
  for (const auto& ind : init_population(b, 500, rng))
    for (std::size_t k = 0; k < 3; ++k) {
      EXPECT_GE(ind.position[k], b.lower[k]);
      EXPECT_LE(ind.position[k], b.upper[k]);
    }
}

TEST(SnapToKind, Examples) {
  Bounds b({0.0}, {100.0});
  EXPECT_EQ(snap_to_kind(RealVector{42.3}, {VariableKind::integer()}, b)[0], 42.0);

  const auto& catalog = engineering::wire_diameter_catalog();
  Bounds wire({catalog.front()}, {catalog.back()});
  EXPECT_DOUBLE_EQ(snap_to_kind(RealVector{0.30}, {VariableKind::discrete(catalog)}, wire)[0],
                   0.3070);

  EXPECT_EQ(snap_to_kind(RealVector{0.5}, {VariableKind::binary()}, Bounds({0.0}, {1.0}))[0], 1.0);
  EXPECT_EQ(snap_to_kind(RealVector{0.4999}, {VariableKind::binary()}, Bounds({0.0}, {1.0}))[0],
            0.0);
}

TEST(SnapToKind, DiscreteTieGoesToSmaller) {
  Bounds b({1.0}, {2.0});
  EXPECT_EQ(snap_to_kind(RealVector{1.5}, {VariableKind::discrete({1.0, 2.0})}, b)[0], 1.0);
}

TEST(SnapToKind, IntegerClampedToBounds) {
  Bounds b({12.0}, {60.0});
  EXPECT_EQ(snap_to_kind(RealVector{60.7}, {VariableKind::integer()}, b)[0], 60.0);
  EXPECT_EQ(snap_to_kind(RealVector{3.0}, {VariableKind::integer()}, b)[0], 12.0);
}

TEST(SnapToKind, Idempotent) {
  const auto& catalog = engineering::wire_diameter_catalog();
  VariableKinds kinds = {VariableKind::continuous(), VariableKind::integer(),
                         VariableKind::discrete(catalog), VariableKind::binary()};
  Bounds b({-10.0, 1.0, catalog.front(), 0.0}, {10.0, 70.0, catalog.back(), 1.0});
  RngStream rng(3);
  for (int i = 0; i < 1000; ++i) {
    RealVector x(4);
    for (std::size_t k = 0; k < 4; ++k)
      x[k] = b.lower[k] + rng.uniform() * (b.upper[k] - b.lower[k]);
    const auto once = snap_to_kind(x, kinds, b);
    EXPECT_EQ(snap_to_kind(once, kinds, b), once);
    EXPECT_EQ(once[0], x[0]);
  }
}

TEST(AggregateTrials, IdenticalTrials) {
  std::vector<double> bests{7, 7, 7};
  std::vector<std::uint64_t> evals{1, 2, 3};
  std::vector<double> times{0.1, 0.2, 0.3};
  auto s = aggregate_trials(bests, evals, times, {}, Sense::minimize);
  EXPECT_EQ(s.mean, 7.0);
  EXPECT_EQ(s.std_dev, 0.0);
  EXPECT_DOUBLE_EQ(s.avg_function_evals, 2.0);
  EXPECT_DOUBLE_EQ(s.avg_time_s, 0.2);
  EXPECT_DOUBLE_EQ(s.total_time_s, 0.6);
}

TEST(AggregateTrials, TwoPointSample) {
  std::vector<double> bests{2, 4};
  std::vector<std::uint64_t> evals{0, 0};
  std::vector<double> times{0, 0};
  auto s = aggregate_trials(bests, evals, times, {}, Sense::minimize);
  EXPECT_DOUBLE_EQ(s.mean, 3.0);
  EXPECT_NEAR(s.std_dev, std::sqrt(2.0), 1e-12);
  EXPECT_EQ(s.best, 2.0);
  EXPECT_EQ(s.worst, 4.0);
  auto m = aggregate_trials(bests, evals, times, {}, Sense::maximize);
  EXPECT_EQ(m.best, 4.0);
  EXPECT_EQ(m.worst, 2.0);
}

TEST(AggregateTrials, UsageErrors) {
  std::vector<double> none;
  std::vector<std::uint64_t> no_evals;
  EXPECT_THROW(aggregate_trials(none, no_evals, none, {}, Sense::minimize), std::invalid_argument);
  std::vector<double> two{1, 2};
  std::vector<std::uint64_t> one_eval{1};
  EXPECT_THROW(aggregate_trials(two, one_eval, two, {}, Sense::minimize), std::invalid_argument);
}

TEST(RngStream, SameSeedSameSequence) {
  RngStream a(123), b(123), c(124);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform();
    EXPECT_EQ(x, b.uniform());
    differs |= x != c.uniform();
  }
  EXPECT_TRUE(differs);
}

TEST(RngStream, CertainChanceConsumesNothing) {
  RngStream a(5), b(5);
  EXPECT_FALSE(a.chance(0.0));
  EXPECT_TRUE(a.chance(1.0));
  EXPECT_EQ(a.uniform(), b.uniform());
}

TEST(RngStream, IndexInRange) {
  RngStream rng(8);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 7000; ++i) ++hits[rng.index(7)];
  for (int h : hits) EXPECT_GT(h, 800);
  EXPECT_THROW(rng.index(0), std::invalid_argument);
}

TEST(ProblemSpec, RejectsMalformedDiscreteSets) {
  ProblemSpec p;
  p.name = "p";
  p.objective = [](std::span<const double>) { return 0.0; };
  p.bounds = Bounds({0.0}, {1.0});
  p.kinds = {VariableKind::discrete({0.5, 0.2})};
  EXPECT_THROW(p.validate(), ConfigError);
  p.kinds = {VariableKind::discrete({})};
  EXPECT_THROW(p.validate(), ConfigError);
  p.kinds = {VariableKind::discrete({0.5, 2.0})};
  EXPECT_THROW(p.validate(), ConfigError);
  p.kinds = {VariableKind::discrete({0.2, 0.5})};
  EXPECT_NO_THROW(p.validate());
}

}  // namespace
}  // namespace faga
