#ifndef MPRP_ORACLE_HPP
#define MPRP_ORACLE_HPP

#include <stdexcept>
#include <vector>

#include "mprp/instance.hpp"
#include "mprp/segment.hpp"
#include "mprp/solution.hpp"

namespace mprp {

struct OracleConfig {
  int grid = 4;          // time subdivisions per hour
  int max_sites = 8;
  int max_vehicles = 2;
};

// Thrown when an instance exceeds the configured size caps; carries the cap
// that fired so accidental exponential runs fail loudly.
struct OracleRefusal : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exhaustive profit-optimal solver over all site-to-vehicle partitions,
// visit orders and grid-restricted visit times. Exact on the grid: visit
// times are multiples of 1/grid, so results are optimal among grid-feasible
// solutions. Requires integral production rates (loads then live on the
// 1/grid lattice and the capacity bookkeeping is exact).
Solution solve_exact(const Instance& inst, const OracleConfig& config);

// Optimal closed tour length from the depot through all points; at most 10
// points.
double solve_exact_tsp(const Point& depot, const std::vector<Point>& points);

// Profit-optimal tour value for one fixed-quantity segment (continuous
// earliest-arrival timing, brute force over subsets and orders); at most 8
// copies. The empty tour (profit 0) is always admissible.
double best_segment_profit(const SegmentProblem& p);

}  // namespace mprp

#endif
