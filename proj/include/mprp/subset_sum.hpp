#ifndef MPRP_SUBSET_SUM_HPP
#define MPRP_SUBSET_SUM_HPP

#include <cstdint>
#include <vector>

namespace mprp {

// Fixed-point scale used to restore integrality of real-valued quantities
// before subset-sum / load bookkeeping.
inline constexpr std::int64_t kFixedPointScale = 1000;

std::int64_t to_fixed_point(double q, std::int64_t scale = kFixedPointScale);

struct SubsetSumResult {
  std::vector<int> chosen;   // item indices, ascending
  std::int64_t total = 0;    // sum of chosen values, <= capacity
};

// Optimization subset-sum: the subset of `values` whose sum is as close to
// `capacity` as possible without exceeding it. Ties are broken towards the
// lexicographically smallest index set. Values must be positive; an empty
// input yields the empty subset.
SubsetSumResult best_subset(const std::vector<std::int64_t>& values,
                            std::int64_t capacity);

}  // namespace mprp

#endif
