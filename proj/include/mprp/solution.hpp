#ifndef MPRP_SOLUTION_HPP
#define MPRP_SOLUTION_HPP

#include <string>
#include <vector>

#include "mprp/instance.hpp"

namespace mprp {

// Absolute tolerances used by the feasibility checks.
inline constexpr double kTimeTol = 1e-9;
inline constexpr double kQuantityTol = 1e-6;

struct Visit {
  int site = 0;
  double t = 0.0;  // collection instant
  double q = 0.0;  // quantity collected at t
};

// Ordered visit list of one vehicle. Depot start and end are implicit: the
// depot legs are charged in route_cost but carry no Visit record.
struct Route {
  int vehicle = 0;
  std::vector<Visit> visits;
};

struct Solution {
  std::vector<Route> routes;
};

// Total route reward (sum of collected quantities).
double route_reward(const Route& r);

// Total distance travelled: depot -> first visit, inter-visit legs, last
// visit -> depot. Empty routes cost 0. Unknown site ids throw.
double route_cost(const Route& r, const Instance& inst);

// Objective: total collected quantity minus total travel cost. May be
// negative.
double profit(const Solution& sol, const Instance& inst);
double route_profit(const Route& r, const Instance& inst);

struct ConstraintViolation {
  int constraint = 0;  // 3 capacity, 4 window, 5 travel, 6 production, 7 uniqueness
  int vehicle = 0;
  int site = 0;
  std::string detail;
};

// Checks constraints (2)-(7): capacity, time windows, travel-time gaps
// (t_j - t_i >= d_ij, a lower bound), production q = supply_at(t), and
// per-site vehicle uniqueness. Empty result iff feasible.
std::vector<ConstraintViolation> check_feasibility(const Solution& sol,
                                                   const Instance& inst);

// Solution format: {routes: [{vehicle, visits: [{site, t, q}]}], meta: {...}}.
// The writer records profit and the violation list under `meta`.
Solution parse_solution(const std::string& text);
std::string solution_to_json(const Solution& sol, const Instance& inst);
void save_solution(const Solution& sol, const Instance& inst, const std::string& path);

}  // namespace mprp

#endif
