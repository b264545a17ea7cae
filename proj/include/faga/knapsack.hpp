#ifndef FAGA_KNAPSACK_HPP
#define FAGA_KNAPSACK_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "faga/core.hpp"
#include "faga/engines.hpp"

namespace faga::knapsack {

struct KnapsackInstance {
  std::string id;
  std::vector<double> profits;
  std::vector<double> weights;
  double capacity = 0.0;
  std::optional<double> known_optimum;
  std::optional<double> alternate_optimum;  // a second reported best, kept as metadata
  std::size_t declared_items = 0;           // item count stated alongside the data
  bool data_incomplete = false;             // weight/profit lists shorter than declared

  std::size_t items() const { return profits.size(); }
  void validate() const;
};

struct MkpInstance {
  std::string id;
  std::vector<double> profits;
  std::vector<std::vector<double>> weights;  // constraints x items
  std::vector<double> capacities;
  std::optional<double> known_optimum;

  std::size_t items() const { return profits.size(); }
  std::size_t constraints() const { return capacities.size(); }
  void validate() const;
};

/// Single-constraint view as a one-row MKP, and back.
MkpInstance as_mkp(const KnapsackInstance& instance);
KnapsackInstance as_skp(const MkpInstance& instance);

/// 10 * max profit.
double default_theta(std::span<const double> profits);

struct SkpScore {
  double fitness;
  double value;
  double weight;
};

/// value - theta * max(0, weight - W).
SkpScore skp_fitness(const KnapsackInstance& instance, std::span<const std::uint8_t> bits,
                     double theta);

struct MkpScore {
  double fitness;
  double value;
  std::vector<double> violations;  // max(0, row weight - capacity) per constraint
};

MkpScore mkp_fitness(const MkpInstance& instance, std::span<const std::uint8_t> bits,
                     double theta);

bool is_feasible(const MkpInstance& instance, std::span<const std::uint8_t> bits);

struct ExactSolution {
  double value = 0.0;
  BitVector bits;
};

/// Exact optimum. Integral weights and capacity use the capacity-indexed DP
/// table; anything else falls back to branch and bound.
ExactSolution dp_solve(const KnapsackInstance& instance);

/// Depth-first branch and bound with the fractional (Dantzig) bound.
ExactSolution branch_and_bound_solve(const KnapsackInstance& instance);

/// Plain 2^n enumeration; refuses n > 30.
ExactSolution exhaustive_solve(const KnapsackInstance& instance);

/// (f - min) / (max - min); all 0.5 when the range is empty.
std::vector<double> normalize_fitness(std::span<const double> values);

/// bit k = 1 iff position[k] >= 0.5.
BitVector binarize(std::span<const double> position);

/// p1[:cut] ++ p2[cut:]. Requires equal lengths >= 2 and 1 <= cut <= n - 1.
BitVector one_point_crossover(std::span<const std::uint8_t> p1, std::span<const std::uint8_t> p2,
                              std::size_t cut);
/// Same with the cut drawn uniformly from {1, ..., n - 1}.
BitVector one_point_crossover(std::span<const std::uint8_t> p1, std::span<const std::uint8_t> p2,
                              RngStream& rng);

/// Flips each bit independently with probability p_mut.
BitVector bit_flip_mutation(std::span<const std::uint8_t> bits, double p_mut, RngStream& rng);

struct BinaryParams {
  FireflyParams firefly{0.2, 1.0, 1.0};
  /// Divide gamma by the item count so attraction does not vanish between
  /// vertices of a high-dimensional cube.
  bool scale_gamma = true;
  GeneticParams genetic;
  RunConfig run{30, 1000, std::nullopt, std::nullopt, true};
  std::optional<double> theta;  // unset: 10 * max profit
  double p_mut = 0.05;
  bool greedy_seed = true;
  bool firefly_stage = true;  // false gives the GA-only variant
  bool genetic_stage = true;  // false gives the FA-only variant

  void validate() const;
};

struct BinaryResult {
  BitVector bits;     // best feasible selection found
  double value = 0.0;
  Trace trace;        // best feasible value per iteration
  std::uint64_t evaluations = 0;
  std::size_t iterations = 0;
};

BinaryResult binary_faga_solve(const KnapsackInstance& instance, const BinaryParams& params,
                               RngStream& rng);
BinaryResult binary_faga_solve(const MkpInstance& instance, const BinaryParams& params,
                               RngStream& rng);

/// Ids f1 ... f20 in order.
const std::vector<std::string>& builtin_skp_ids();
/// Throws ConfigError for unknown ids.
KnapsackInstance builtin_skp(std::string_view id);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, const std::string& message)
      : std::runtime_error("offset " + std::to_string(offset) + ": " + message), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// OR-Library multi-constraint format: per instance `n m optimum`, n profits,
/// m x n coefficients row by row, m capacities. With `strict`, an input
/// holding no instance is an error.
std::vector<MkpInstance> parse_orlib_mkp(std::string_view text, bool strict = false);

/// Inverse of parse_orlib_mkp. Numbers are written in shortest round-trip form.
std::string serialize_orlib_mkp(std::span<const MkpInstance> instances);

}  // namespace faga::knapsack

#endif  // FAGA_KNAPSACK_HPP
