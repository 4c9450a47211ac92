#include "mprp/subset_sum.hpp"

#include <cmath>
#include <stdexcept>

namespace mprp {

std::int64_t to_fixed_point(double q, std::int64_t scale) {
  return static_cast<std::int64_t>(std::floor(q * static_cast<double>(scale) + 1e-9));
}

namespace {

// Bit `v` of row `j`: some subset of items j..n-1 sums to v.
class ReachTable {
 public:
  ReachTable(std::size_t rows, std::int64_t capacity)
      : words_((capacity / 64) + 1), bits_(rows * words_) {}

  bool get(std::size_t row, std::int64_t v) const {
    return (bits_[row * words_ + v / 64] >> (v % 64)) & 1u;
  }
  void set_zero(std::size_t row) { bits_[row * words_] |= 1u; }

  // row = next | (next << value), truncated at capacity.
  void shift_or(std::size_t row, std::size_t next, std::int64_t value) {
    const std::size_t off = row * words_;
    const std::size_t noff = next * words_;
    const std::size_t word_shift = static_cast<std::size_t>(value) / 64;
    const unsigned bit_shift = static_cast<unsigned>(value % 64);
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t acc = bits_[noff + w];
      if (w >= word_shift) {
        const std::size_t src = w - word_shift;
        acc |= bits_[noff + src] << bit_shift;
        if (bit_shift != 0 && src > 0)
          acc |= bits_[noff + src - 1] >> (64 - bit_shift);
      }
      bits_[off + w] = acc;
    }
  }

 private:
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

}  // namespace

SubsetSumResult best_subset(const std::vector<std::int64_t>& values,
                            std::int64_t capacity) {
  if (capacity < 1) throw std::invalid_argument("best_subset: capacity must be >= 1");
  for (std::int64_t v : values)
    if (v <= 0) throw std::invalid_argument("best_subset: values must be positive");
  const std::size_t n = values.size();
  if (n == 0) return {};

  // Suffix reachability: row j covers items j..n-1.
  ReachTable reach(n + 1, capacity);
  reach.set_zero(n);
  for (std::size_t j = n; j-- > 0;) {
    if (values[j] > capacity) {
      reach.shift_or(j, j + 1, 0);
    } else {
      reach.shift_or(j, j + 1, values[j]);
    }
  }

  std::int64_t best = capacity;
  while (best > 0 && !reach.get(0, best)) --best;

  // Greedy front-to-back reconstruction yields the lexicographically
  // smallest witness among optimal subsets.
  SubsetSumResult result;
  std::int64_t remaining = best;
  for (std::size_t j = 0; j < n && remaining > 0; ++j) {
    if (values[j] <= remaining && reach.get(j + 1, remaining - values[j])) {
      result.chosen.push_back(static_cast<int>(j));
      remaining -= values[j];
    }
  }
  result.total = best;
  return result;
}

}  // namespace mprp
