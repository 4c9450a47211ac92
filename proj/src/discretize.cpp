#include "mprp/discretize.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace mprp {

double ReducedInstance::dist(int a, int b) const {
  const SiteCopy& ca = copies[a];
  const SiteCopy& cb = copies[b];
  if (ca.site_id == cb.site_id) return 0.0;
  return distance(ca.pos(), cb.pos());
}

double ReducedInstance::dist_depot(int a) const {
  return distance(depot, copies[a].pos());
}

int interval_count(double alpha, double epsilon) {
  if (epsilon <= 0.0) throw std::invalid_argument("epsilon must be positive");
  if (alpha <= 1.0) throw std::invalid_argument("alpha must exceed 1");
  const double exact = std::log(alpha) / std::log1p(epsilon);
  int n = 1 + static_cast<int>(std::ceil(exact - 1e-12));
  return std::max(n, 2);
}

std::pair<double, double> interval_bounds(const Site& s, int tau, int N, double epsilon) {
  const double w = static_cast<double>(s.l - s.e);
  const double e = static_cast<double>(s.e);
  if (tau == 1) return {e, e + w / std::pow(1.0 + epsilon, N - 1)};
  return {e + w / std::pow(1.0 + epsilon, N - tau + 1),
          e + w / std::pow(1.0 + epsilon, N - tau)};
}

ReducedInstance reduce(const Instance& inst, const ReduceOptions& opts) {
  if (opts.epsilon <= 0.0) throw std::invalid_argument("reduce: epsilon must be positive");
  ReducedInstance red;
  red.depot = inst.depot;
  red.Q = inst.Q;
  red.T = inst.T;
  red.epsilon = opts.epsilon;
  red.N = interval_count(inst.alpha, opts.epsilon);
  for (const Site& s : inst.sites) {
    for (int tau = 2; tau <= red.N; ++tau) {
      auto [start, end] = interval_bounds(s, tau, red.N, opts.epsilon);
      SiteCopy c;
      c.site_id = s.id;
      c.tau = tau;
      c.x = s.x;
      c.y = s.y;
      c.win_start = start;
      c.win_end = end;
      c.q_fixed = opts.linear_quantities
                      ? s.q_max() * (tau - 0.5) / (red.N - 1)
                      : supply_at(s, start);
      red.copies.push_back(c);
    }
  }
  return red;
}

namespace {

bool reduced_route_feasible(const CopyRoute& route, const ReducedInstance& red) {
  double prev_t = 0.0;
  const SiteCopy* prev = nullptr;
  for (const CopyVisit& v : route) {
    if (v.copy < 0 || v.copy >= static_cast<int>(red.copies.size())) return false;
    const SiteCopy& c = red.copies[v.copy];
    if (v.t < c.win_start - kTimeTol || v.t > c.win_end + kTimeTol) return false;
    const double leg = prev ? (prev->site_id == c.site_id
                                   ? 0.0
                                   : distance(prev->pos(), c.pos()))
                            : distance(red.depot, c.pos());
    if (v.t - prev_t < leg - kTimeTol) return false;
    prev = &c;
    prev_t = v.t;
  }
  return true;
}

}  // namespace

LiftResult lift_route(const CopyRoute& reduced_route, const ReducedInstance& red,
                      const Instance& inst) {
  if (!reduced_route_feasible(reduced_route, red))
    throw std::logic_error("lift_route: input route infeasible on reduced instance");

  // Latest visited interval per site.
  std::map<int, int> latest_tau;
  for (const CopyVisit& v : reduced_route) {
    const SiteCopy& c = red.copies[v.copy];
    auto [it, fresh] = latest_tau.emplace(c.site_id, c.tau);
    if (!fresh) it->second = std::max(it->second, c.tau);
  }

  // Keep one copy per site (the latest interval), in route order.
  std::vector<const SiteCopy*> kept;
  for (const CopyVisit& v : reduced_route) {
    const SiteCopy& c = red.copies[v.copy];
    auto it = latest_tau.find(c.site_id);
    if (it != latest_tau.end() && it->second == c.tau) {
      kept.push_back(&c);
      latest_tau.erase(it);
    }
  }

  while (true) {
    LiftResult result;
    if (kept.empty()) return result;

    const std::size_t n = kept.size();
    std::vector<double> earliest(n), latest(n);
    // Forward pass: earliest chain (dropping copies only shortens legs, so
    // this stays inside the intervals when the input route was feasible).
    for (std::size_t i = 0; i < n; ++i) {
      const double leg = i == 0 ? distance(red.depot, kept[i]->pos())
                                : (kept[i - 1]->site_id == kept[i]->site_id
                                       ? 0.0
                                       : distance(kept[i - 1]->pos(), kept[i]->pos()));
      const double arrive = (i == 0 ? 0.0 : earliest[i - 1]) + leg;
      earliest[i] = std::max(arrive, kept[i]->win_start);
      if (earliest[i] > kept[i]->win_end + kTimeTol)
        throw std::logic_error("lift_route: earliest chain leaves interval");
      earliest[i] = std::min(earliest[i], kept[i]->win_end);
    }
    // Backward pass: latest chain within the chosen intervals.
    for (std::size_t i = n; i-- > 0;) {
      latest[i] = kept[i]->win_end;
      if (i + 1 < n) {
        const double leg = kept[i]->site_id == kept[i + 1]->site_id
                               ? 0.0
                               : distance(kept[i]->pos(), kept[i + 1]->pos());
        latest[i] = std::min(latest[i], latest[i + 1] - leg);
      }
      latest[i] = std::max(latest[i], earliest[i]);
    }

    auto realized = [&](const std::vector<double>& times) {
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        total += supply_at(inst.site(kept[i]->site_id), times[i]);
      return total;
    };

    const double load_late = realized(latest);
    const double load_early = realized(earliest);
    std::vector<double> times = latest;
    if (load_late > inst.Q + kTimeTol) {
      if (load_early > inst.Q + kTimeTol) {
        // Even the earliest schedule overflows; shed the tail and retry.
        kept.pop_back();
        continue;
      }
      // Timestamp constraints are linear, so any convex combination of the
      // two feasible schedules is feasible; supply is linear in time, so the
      // load interpolates linearly as well.
      const double lambda = (inst.Q - load_early) / (load_late - load_early);
      for (std::size_t i = 0; i < n; ++i)
        times[i] = earliest[i] + lambda * (latest[i] - earliest[i]);
    }

    for (std::size_t i = 0; i < n; ++i) {
      const Site& s = inst.site(kept[i]->site_id);
      result.route.visits.push_back({s.id, times[i], supply_at(s, times[i])});
      result.declared_reward += kept[i]->q_fixed;
    }
    return result;
  }
}

}  // namespace mprp
