#ifndef MPRP_SEGMENT_HPP
#define MPRP_SEGMENT_HPP

#include <vector>

#include "mprp/discretize.hpp"
#include "mprp/geometry.hpp"

namespace mprp {

// Single-vehicle fixed-quantity subproblem over a pruned set of site copies.
struct SegmentProblem {
  std::vector<SiteCopy> copies;
  Point depot;
  double capacity = 0.0;
  int T = 0;

  double dist(int a, int b) const;
  double dist_depot(int a) const;
};

enum class SegmentMode { Exact, Heuristic, Auto };

struct SolverPolicy {
  SegmentMode mode = SegmentMode::Auto;
  int exact_limit = 12;  // max copies for the exact solver (Auto mode switch)
  int time_grid = 4;     // subdivisions per hour (oracle comparisons)
};

double copy_route_reward(const CopyRoute& r, const SegmentProblem& p);
double copy_route_cost(const CopyRoute& r, const SegmentProblem& p);
double copy_route_profit(const CopyRoute& r, const SegmentProblem& p);
bool copy_route_feasible(const CopyRoute& r, const SegmentProblem& p);

// Maximizes the collected quantity under windows, travel and capacity.
// Exact mode runs a label-correcting search over (visited set, last copy)
// states with earliest-arrival/cost labels and is reward-optimal; heuristic
// mode is cheapest-insertion followed by window-respecting 2-opt. Ties break
// towards lower cost, then lexicographic copy order. Visit times are the
// earliest feasible ones.
CopyRoute maximize_reward(const SegmentProblem& p, const SolverPolicy& policy);

// Profit-improving arc replacement: repeatedly drops contiguous visit
// blocks whose detour costs more than their declared quantity (depot legs
// included), and keeps the single most profitable contiguous segment when
// that beats the drop-wise fixed point. Profit never decreases and never
// ends negative (the whole route is itself a droppable block); infeasible
// input throws std::logic_error.
CopyRoute shortcut_pass(const CopyRoute& r, const SegmentProblem& p);

// Guaranteed fraction 1 / (8 ln 2 log2 T) of the optimal segment profit.
// T < 2 is an argument error.
double profit_lower_bound_factor(int T);

}  // namespace mprp

#endif
