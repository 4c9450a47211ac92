#ifndef MPRP_PIPELINE_HPP
#define MPRP_PIPELINE_HPP

#include <vector>

#include "mprp/instance.hpp"
#include "mprp/segment.hpp"
#include "mprp/solution.hpp"

namespace mprp {

struct PipelineConfig {
  double epsilon = 0.5;
  SolverPolicy policy;
  bool mprp_mode = false;          // fixed supply: skip the reduction
  bool subset_sum_pruning = true;  // capacity-prune reduced copies
  bool reassign_fixed_point = false;
  int max_iterations = 50;
};

struct IterationRecord {
  std::vector<int> unassigned_before;
  std::vector<std::vector<int>> subsets;
  std::vector<double> segment_rewards;  // declared reward per vehicle this round
  int dedup_removed = 0;
  int reassign_moves = 0;
  int newly_visited = 0;
  double profit_after = 0.0;
};

struct IterationTrace {
  std::vector<IterationRecord> iterations;
  bool stopped_all_assigned = false;
  bool stopped_no_progress = false;
};

struct SolveResult {
  Solution solution;
  IterationTrace trace;
};

// Full multi-vehicle pipeline: WSPD fleet decomposition, per-vehicle
// reduction + reward-maximizing segment solve + lift (first time a vehicle
// gets sites), insertion-based extension afterwards, then per-site
// deduplication and profit-improving reassignment, iterated until no new
// site is picked up. Validation errors throw std::invalid_argument.
SolveResult solve(const Instance& inst, const PipelineConfig& config);

// Step 4: every contested site stays with the vehicle collecting the
// largest quantity (ties: lower vehicle id); losing routes are re-timed.
std::vector<Route> dedup_sites(std::vector<Route> routes, const Instance& inst);

// Step 5: deterministic sweep over (site asc, vehicle asc); a site moves to
// the cheapest feasible insertion position of another route (or, if
// currently unrouted, into any route) when total profit strictly increases.
Solution reassign_sites(Solution sol, const Instance& inst,
                        bool fixed_point = false);

// Re-times a route on the original windows: pushes timestamps as late as the
// successor chain allows, interpolating towards the earliest schedule when
// the capacity would overflow. Returns false when no feasible timing exists.
bool retime_route(Route& r, const Instance& inst);

}  // namespace mprp

#endif
