#ifndef MPRP_DISCRETIZE_HPP
#define MPRP_DISCRETIZE_HPP

#include <utility>
#include <vector>

#include "mprp/instance.hpp"
#include "mprp/solution.hpp"

namespace mprp {

// One fixed-quantity copy (i, tau) of an original site, restricted to the
// tau-th slice of its time window.
struct SiteCopy {
  int site_id = 0;
  int tau = 0;
  double x = 0.0;
  double y = 0.0;
  double win_start = 0.0;
  double win_end = 0.0;
  double q_fixed = 0.0;

  Point pos() const { return {x, y}; }
};

// Fixed-supply instance produced by the geometric time-interval split.
// Copies of the same original site sit at mutual distance 0.
struct ReducedInstance {
  std::vector<SiteCopy> copies;
  Point depot;
  double Q = 0.0;
  int T = 0;
  double epsilon = 0.0;
  int N = 0;  // interval count per site

  double dist(int a, int b) const;
  double dist_depot(int a) const;
};

struct ReduceOptions {
  double epsilon = 0.5;
  // Use the linear-in-tau declared quantity q_max * (tau - 0.5) / (N - 1)
  // instead of the left-endpoint supply. Comparison experiments only; the
  // left-endpoint quantity is what the reward bounds rely on.
  bool linear_quantities = false;
};

// Smallest N with (1 + epsilon)^(N-1) >= alpha.
int interval_count(double alpha, double epsilon);

// [start, end] of interval tau (1-based) of the site's window. Interval 1 is
// [e, e + w / (1+eps)^(N-1)]; interval tau >= 2 spans
// [e + w / (1+eps)^(N-tau+1), e + w / (1+eps)^(N-tau)].
std::pair<double, double> interval_bounds(const Site& s, int tau, int N, double epsilon);

// Splits every site window into N geometric intervals and emits one fixed
// quantity copy per interval with tau >= 2; the declared quantity is the
// supply at the interval's left endpoint, a collectible lower bound within
// factor (1 + epsilon) of any supply inside the interval. The tau = 1 copies
// would declare quantity 0 and are omitted.
ReducedInstance reduce(const Instance& inst, const ReduceOptions& opts);

// A route over copies of a ReducedInstance / SegmentProblem.
struct CopyVisit {
  int copy = 0;  // index into `copies`
  double t = 0.0;
};
using CopyRoute = std::vector<CopyVisit>;

struct LiftResult {
  Route route;              // on the original instance
  double declared_reward = 0.0;  // sum of q_fixed over the kept copies
};

// Maps a feasible reduced-instance route back to the original instance:
// keeps the latest visited interval per site, pushes timestamps as late as
// the successor chain allows to maximize realized supply, and caps the
// realized load at Q by interpolating towards the earliest feasible
// schedule (dropping trailing visits only if even that is over capacity).
// Throws std::logic_error when the input route is infeasible on `red`.
LiftResult lift_route(const CopyRoute& reduced_route, const ReducedInstance& red,
                      const Instance& inst);

}  // namespace mprp

#endif
