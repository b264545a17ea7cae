#include <gtest/gtest.h>

#include <cmath>

#include "faga/knapsack.hpp"

namespace faga::knapsack {
namespace {

KnapsackInstance f4() { return builtin_skp("f4"); }

BinaryParams trials_params() {
  BinaryParams p;
  p.run.max_iterations = 300;
  return p;
}

TEST(SkpFitness, Examples) {
  const auto inst = f4();
  const BitVector pick{0, 1, 0, 1};
  const auto s = skp_fitness(inst, pick, default_theta(inst.profits));
  EXPECT_EQ(s.value, 23.0);
  EXPECT_EQ(s.weight, 11.0);
  EXPECT_EQ(s.fitness, 23.0);
  EXPECT_EQ(skp_fitness(inst, BitVector(4, 0), 100).fitness, 0.0);
  const auto over = skp_fitness(inst, BitVector(4, 1), 100);
  EXPECT_EQ(over.value, 41.0);
  EXPECT_EQ(over.weight, 19.0);
  EXPECT_EQ(over.fitness, -759.0);
  EXPECT_THROW(skp_fitness(inst, BitVector(3, 0), 100), std::invalid_argument);
}

TEST(MkpFitness, Examples) {
  MkpInstance m{"t", {5, 4, 3}, {{2, 3, 1}, {4, 1, 2}}, {4, 5}, std::nullopt};
  const auto zero = mkp_fitness(m, BitVector(3, 0), 50);
  EXPECT_EQ(zero.fitness, 0.0);
  EXPECT_EQ(zero.violations, (std::vector<double>{0, 0}));
  const BitVector ok{0, 1, 1};
  EXPECT_TRUE(is_feasible(m, ok));
  EXPECT_EQ(mkp_fitness(m, ok, 50).fitness, 7.0);
  const auto bad = mkp_fitness(m, BitVector(3, 1), 10);
  EXPECT_EQ(bad.violations, (std::vector<double>{2, 2}));
  EXPECT_EQ(bad.fitness, 12.0 - 40.0);
  EXPECT_FALSE(is_feasible(m, BitVector(3, 1)));
  EXPECT_THROW(mkp_fitness(m, BitVector(2, 0), 1), std::invalid_argument);
}

TEST(Registry, Examples) {
  const auto a = f4();
  EXPECT_EQ(a.items(), 4u);
  EXPECT_EQ(a.capacity, 11.0);
  EXPECT_EQ(a.weights, (std::vector<double>{2, 4, 6, 7}));
  EXPECT_EQ(a.profits, (std::vector<double>{6, 10, 12, 13}));
  EXPECT_EQ(a.known_optimum, 23.0);
  const auto b = builtin_skp("f3");
  EXPECT_EQ(b.capacity, 20.0);
  EXPECT_EQ(b.weights, (std::vector<double>{6, 5, 9, 7}));
  EXPECT_EQ(b.known_optimum, 35.0);
  const auto c = builtin_skp("f2");
  EXPECT_EQ(c.items(), 20u);
  EXPECT_EQ(c.capacity, 878.0);
  EXPECT_EQ(c.known_optimum, 1024.0);
  EXPECT_EQ(builtin_skp("f15").alternate_optimum, 2444.0);
  EXPECT_THROW(builtin_skp("f21"), ConfigError);
  EXPECT_EQ(builtin_skp_ids().size(), 20u);
  for (const auto& id : builtin_skp_ids()) EXPECT_NO_THROW(builtin_skp(id).validate());
}

TEST(Exact, Examples) {
  EXPECT_EQ(dp_solve(builtin_skp("f3")).value, 35.0);
  EXPECT_NEAR(dp_solve(builtin_skp("f5")).value, 481.0694, 1e-3);
  auto zero = f4();
  zero.capacity = 0.0;
  EXPECT_EQ(dp_solve(zero).value, 0.0);
  EXPECT_EQ(dp_solve(zero).bits, BitVector(4, 0));
}

TEST(Exact, DpMatchesEnumerationAndBranchAndBound) {
  for (const auto& id : builtin_skp_ids()) {
    const auto inst = builtin_skp(id);
    const auto dp = dp_solve(inst);
    const auto bb = branch_and_bound_solve(inst);
    EXPECT_NEAR(dp.value, bb.value, 1e-9) << id;
    const auto s = skp_fitness(inst, dp.bits, default_theta(inst.profits));
    EXPECT_LE(s.weight, inst.capacity) << id;
    EXPECT_NEAR(s.value, dp.value, 1e-9) << id;
    if (inst.items() <= 20) EXPECT_NEAR(dp.value, exhaustive_solve(inst).value, 1e-9) << id;
  }
}

TEST(Exact, RandomInstancesAgree) {
  RngStream rng(8);
  for (int t = 0; t < 50; ++t) {
    KnapsackInstance inst;
    inst.id = "r";
    const std::size_t n = 1 + rng.index(14);
    for (std::size_t i = 0; i < n; ++i) {
      inst.weights.push_back(double(1 + rng.index(30)));
      inst.profits.push_back(double(rng.index(40)));
    }
    inst.capacity = double(1 + rng.index(100));
    const double ex = exhaustive_solve(inst).value;
    EXPECT_EQ(dp_solve(inst).value, ex);
    EXPECT_EQ(branch_and_bound_solve(inst).value, ex);
  }
}

TEST(Operators, NormalizeFitness) {
  EXPECT_EQ(normalize_fitness(std::vector<double>{0, 5, 10}), (std::vector<double>{0, 0.5, 1}));
  EXPECT_EQ(normalize_fitness(std::vector<double>{7, 7, 7}), (std::vector<double>{0.5, 0.5, 0.5}));
  const auto out = normalize_fitness(std::vector<double>{-3, 9, 2.5, 4});
  EXPECT_EQ(*std::min_element(out.begin(), out.end()), 0.0);
  EXPECT_EQ(*std::max_element(out.begin(), out.end()), 1.0);
}

TEST(Operators, Binarize) {
  EXPECT_EQ(binarize(std::vector<double>{0.49, 0.5, 0.51}), (BitVector{0, 1, 1}));
  EXPECT_EQ(binarize(std::vector<double>(5, 0.0)), BitVector(5, 0));
  const BitVector bits{1, 0, 0, 1};
  EXPECT_EQ(binarize(RealVector(bits.begin(), bits.end())), bits);
}

TEST(Operators, OnePointCrossover) {
  EXPECT_EQ(one_point_crossover(BitVector{1, 1, 1, 1}, BitVector{0, 0, 0, 0}, 2),
            (BitVector{1, 1, 0, 0}));
  RngStream rng(1);
  const BitVector p{1, 0, 1, 1, 0};
  for (int i = 0; i < 20; ++i) {
    EXPECT_EQ(one_point_crossover(p, p, rng), p);
    EXPECT_EQ(one_point_crossover(p, BitVector(5, 0), rng).size(), 5u);
  }
  EXPECT_THROW(one_point_crossover(BitVector{1}, BitVector{0}, rng), std::invalid_argument);
  EXPECT_THROW(one_point_crossover(p, p, 0), std::invalid_argument);
  EXPECT_THROW(one_point_crossover(p, p, 5), std::invalid_argument);
}

TEST(Operators, BitFlipMutation) {
  RngStream rng(5);
  const BitVector bits{1, 0, 1, 0, 0, 1};
  EXPECT_EQ(bit_flip_mutation(bits, 0.0, rng), bits);
  EXPECT_EQ(bit_flip_mutation(bits, 1.0, rng), (BitVector{0, 1, 0, 1, 1, 0}));
  const BitVector zeros(100, 0);
  double flips = 0.0;
  for (int i = 0; i < 10000; ++i)
    for (auto b : bit_flip_mutation(zeros, 0.05, rng)) flips += b;
  EXPECT_GE(flips / 10000.0, 4.0);
  EXPECT_LE(flips / 10000.0, 6.0);
}

TEST(BinaryFaga, SmallInstancesReachOptimum) {
  for (const auto& [id, want] : {std::pair<const char*, double>{"f1", 295}, {"f7", 107}}) {
    const auto inst = builtin_skp(id);
    double best = 0.0;
    for (std::uint64_t t = 0; t < 30; ++t) {
      RngStream rng(1 + t);
      best = std::max(best, binary_faga_solve(inst, trials_params(), rng).value);
    }
    EXPECT_EQ(best, want) << id;
  }
}

TEST(BinaryFaga, FeasibleBoundedMonotone) {
  for (const auto& id : builtin_skp_ids()) {
    const auto inst = builtin_skp(id);
    const double opt = dp_solve(inst).value;
    BinaryParams p;
    p.run.max_iterations = 100;
    for (std::uint64_t seed : {1u, 2u}) {
      RngStream rng(seed);
      const auto r = binary_faga_solve(inst, p, rng);
      const auto s = skp_fitness(inst, r.bits, 0.0);
      EXPECT_LE(s.weight, inst.capacity) << id;
      EXPECT_EQ(s.value, r.value) << id;
      EXPECT_LE(r.value, opt + 1e-9) << id;
      ASSERT_EQ(r.trace.size(), 100u);
      for (std::size_t i = 1; i < r.trace.size(); ++i)
        EXPECT_GE(r.trace[i].best, r.trace[i - 1].best) << id;
    }
  }
}

TEST(BinaryFaga, VariantsAndMkp) {
  MkpInstance m{"t", {10, 7, 8, 3, 9}, {{4, 3, 5, 1, 4}, {2, 5, 3, 2, 6}}, {9, 10}, std::nullopt};
  BinaryParams p;
  p.run.max_iterations = 50;
  for (int variant = 0; variant < 3; ++variant) {
    p.firefly_stage = variant != 2;
    p.genetic_stage = variant != 1;
    RngStream rng(3);
    const auto r = binary_faga_solve(m, p, rng);
    EXPECT_TRUE(is_feasible(m, r.bits));
    EXPECT_EQ(mkp_fitness(m, r.bits, 0).value, r.value);
  }
  RngStream a(9), b(9);
  EXPECT_EQ(binary_faga_solve(f4(), p, a).bits, binary_faga_solve(f4(), p, b).bits);
}

TEST(OrLib, RoundTrip) {
  MkpInstance m{"x", {3.5, 7}, {{1, 2.25}}, {3}, 10.5};
  const std::vector<MkpInstance> in{m, as_mkp(builtin_skp("f5"))};
  const auto text = serialize_orlib_mkp(in);
  const auto back = parse_orlib_mkp(text);
  ASSERT_EQ(back.size(), 2u);
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_EQ(back[k].profits, in[k].profits);
    EXPECT_EQ(back[k].weights, in[k].weights);
    EXPECT_EQ(back[k].capacities, in[k].capacities);
    EXPECT_EQ(back[k].known_optimum, in[k].known_optimum);
  }
  EXPECT_EQ(serialize_orlib_mkp(back), text);
}

TEST(OrLib, WhitespaceAndUnknownOptimum) {
  const auto v = parse_orlib_mkp("  2\t1\n0\n\n 4 5\r\n 1 2 \n 3\n");
  ASSERT_EQ(v.size(), 1u);
  EXPECT_FALSE(v[0].known_optimum.has_value());
  EXPECT_EQ(v[0].capacities, (std::vector<double>{3}));
}

TEST(OrLib, Errors) {
  EXPECT_TRUE(parse_orlib_mkp("").empty());
  EXPECT_THROW(parse_orlib_mkp(" \n", true), ParseError);
  try {
    parse_orlib_mkp("2 1 0\n4 x 1 2 3\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 8u);
    EXPECT_NE(std::string(e.what()).find("profit"), std::string::npos);
  }
  try {
    parse_orlib_mkp("2 1 0\n4 5\n1 2\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("capacity"), std::string::npos);
  }
  EXPECT_THROW(parse_orlib_mkp("2.5 1 0"), ParseError);
}

TEST(Conversions, SkpMkp) {
  const auto m = as_mkp(f4());
  EXPECT_EQ(m.constraints(), 1u);
  EXPECT_EQ(as_skp(m).weights, f4().weights);
  MkpInstance two{"t", {1}, {{1}, {1}}, {1, 1}, std::nullopt};
  EXPECT_THROW(as_skp(two), ConfigError);
  EXPECT_EQ(default_theta(f4().profits), 130.0);
}

}  // namespace
}  // namespace faga::knapsack
