#ifndef MPRP_INSTANCE_HPP
#define MPRP_INSTANCE_HPP

#include <string>
#include <vector>

#include "mprp/geometry.hpp"

namespace mprp {

// A pickup site. The available quantity grows linearly at rate `rho` inside
// the time window [e, l] and is zero outside of it. When `constant_supply`
// is set (fixed-supply instances), the full q_max is available anywhere in
// the window instead.
struct Site {
  int id = 0;
  double x = 0.0;
  double y = 0.0;
  double rho = 0.0;
  int e = 0;
  int l = 0;
  bool constant_supply = false;

  Point pos() const { return {x, y}; }
  double q_max() const { return rho * static_cast<double>(l - e); }
};

struct Instance {
  std::vector<Site> sites;
  Point depot;
  int m = 1;          // fleet size
  double Q = 0.0;     // shared vehicle capacity
  int T = 0;          // horizon; all windows lie in [0, T]
  double alpha = 2.0; // declared bound on pairwise q_max discrepancy
  bool constant_supply = false;

  // Throws std::out_of_range for unknown ids.
  const Site& site(int id) const;
  const Site* find_site(int id) const;
  double total_q_max() const;
};

// Quantity available at site `s` at time `t`. Negative t is an argument error.
double supply_at(const Site& s, double t);

enum class Severity { Warning, Error };

struct ValidationIssue {
  Severity severity = Severity::Error;
  std::string message;
  std::vector<int> sites;  // offending site ids, possibly empty
};

// Checks the standing data assumptions. Violations are returned, not thrown;
// an empty list means all assumptions hold. With `mprp_mode` the fixed-supply
// integrality requirements on Q and q_max are checked as well.
std::vector<ValidationIssue> validate(const Instance& inst, bool mprp_mode = false);

bool has_errors(const std::vector<ValidationIssue>& issues);

// JSON instance format: {depot: [x, y], m, Q, T, alpha, sites: [{id, x, y,
// rho, e, l}, ...]} with an optional boolean `constant_supply`.
Instance parse_instance(const std::string& text);
std::string instance_to_json(const Instance& inst);
Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

}  // namespace mprp

#endif
