#ifndef FAGA_SRC_KNAPSACK_DATA_HPP
#define FAGA_SRC_KNAPSACK_DATA_HPP

#include <cstddef>
#include <vector>

namespace faga::knapsack::detail {

struct SkpRecord {
  const char* id;
  std::size_t declared_items;
  double capacity;
  double optimum;
  bool incomplete;
  std::vector<double> weights;
  std::vector<double> profits;
};

const std::vector<SkpRecord>& skp_records();

}  // namespace faga::knapsack::detail

#endif  // FAGA_SRC_KNAPSACK_DATA_HPP
