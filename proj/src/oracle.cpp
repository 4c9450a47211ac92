#include "mprp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mprp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int ceil_grid(double v) { return static_cast<int>(std::ceil(v - 1e-9)); }

bool integral(double v) { return std::abs(v - std::round(v)) <= 1e-9; }

// Flat min-cost table over (mask, last, time index, load units).
struct DpTable {
  int n, nt, nl;
  std::vector<double> cost;

  DpTable(int n_, int nt_, int nl_)
      : n(n_), nt(nt_), nl(nl_),
        cost(static_cast<std::size_t>(1ull << n_) * n_ * nt_ * nl_, kInf) {}

  double& at(std::size_t mask, int last, int t, int load) {
    return cost[((mask * n + last) * nt + t) * nl + load];
  }
  double get(std::size_t mask, int last, int t, int load) const {
    return cost[((mask * n + last) * nt + t) * nl + load];
  }
};

}  // namespace

Solution solve_exact(const Instance& inst, const OracleConfig& config) {
  const int n = static_cast<int>(inst.sites.size());
  if (n > config.max_sites)
    throw OracleRefusal("oracle refusal: " + std::to_string(n) +
                        " sites exceed max_sites=" + std::to_string(config.max_sites));
  if (inst.m > config.max_vehicles)
    throw OracleRefusal("oracle refusal: " + std::to_string(inst.m) +
                        " vehicles exceed max_vehicles=" +
                        std::to_string(config.max_vehicles));
  if (config.grid < 1) throw std::invalid_argument("oracle: grid must be >= 1");
  for (const Site& s : inst.sites)
    if (!integral(s.rho))
      throw OracleRefusal("oracle refusal: non-integral production rate at site " +
                          std::to_string(s.id));

  const int g = config.grid;
  const int nt = inst.T * g + 1;
  const int qu = static_cast<int>(std::floor(inst.Q * g + 1e-9));
  const int nl = qu + 1;
  const std::size_t nmasks = std::size_t{1} << n;

  Solution sol;
  for (int k = 1; k <= inst.m; ++k) sol.routes.push_back({k, {}});
  if (n == 0) return sol;

  const std::size_t cells = nmasks * n * nt * nl;
  if (cells > 200'000'000ull)
    throw OracleRefusal("oracle refusal: state space too large (" +
                        std::to_string(cells) + " cells)");

  auto site_units = [&](int j, int tIdx) {
    const Site& s = inst.sites[j];
    if (s.constant_supply)
      return static_cast<int>(std::llround(s.q_max() * g));
    return static_cast<int>(std::llround(s.rho)) * (tIdx - s.e * g);
  };

  DpTable dp(n, nt, nl);

  // Seed: depot -> site j, visiting at any grid time inside the window that
  // travel allows (waiting for more supply is legal).
  for (int j = 0; j < n; ++j) {
    const Site& s = inst.sites[j];
    const double leg = distance(inst.depot, s.pos());
    const int tmin = std::max(s.e * g, ceil_grid(leg * g));
    for (int t = tmin; t <= s.l * g; ++t) {
      const int load = site_units(j, t);
      if (load < 0 || load > qu) continue;
      double& slot = dp.at(std::size_t{1} << j, j, t, load);
      slot = std::min(slot, leg);
    }
  }

  for (std::size_t mask = 1; mask < nmasks; ++mask) {
    for (int last = 0; last < n; ++last) {
      if (!(mask >> last & 1)) continue;
      for (int t = 0; t < nt; ++t) {
        for (int load = 0; load <= qu; ++load) {
          const double c = dp.get(mask, last, t, load);
          if (c == kInf) continue;
          for (int j = 0; j < n; ++j) {
            if (mask >> j & 1) continue;
            const Site& sj = inst.sites[j];
            const double leg = distance(inst.sites[last].pos(), sj.pos());
            const int tmin = std::max(sj.e * g, t + ceil_grid(leg * g));
            const std::size_t next = mask | (std::size_t{1} << j);
            for (int t2 = tmin; t2 <= sj.l * g; ++t2) {
              const int dq = site_units(j, t2);
              if (dq < 0 || load + dq > qu) continue;
              double& slot = dp.at(next, j, t2, load + dq);
              slot = std::min(slot, c + leg);
            }
          }
        }
      }
    }
  }

  // Best profit visiting exactly `mask`, plus the witness end state.
  struct End {
    double profit = -kInf;
    int last = -1, t = 0, load = 0;
  };
  std::vector<End> best_exact(nmasks);
  best_exact[0].profit = 0.0;
  for (std::size_t mask = 1; mask < nmasks; ++mask) {
    for (int last = 0; last < n; ++last) {
      if (!(mask >> last & 1)) continue;
      const double home = distance(inst.sites[last].pos(), inst.depot);
      for (int t = 0; t < nt; ++t) {
        for (int load = 0; load <= qu; ++load) {
          const double c = dp.get(mask, last, t, load);
          if (c == kInf) continue;
          const double pft = static_cast<double>(load) / g - c - home;
          if (pft > best_exact[mask].profit + 1e-12) {
            best_exact[mask] = {pft, last, t, load};
          }
        }
      }
    }
  }

  // Best profit with one vehicle on a subset of `mask`, with the achieving
  // exact mask recorded.
  std::vector<double> best_any(nmasks, 0.0);
  std::vector<std::size_t> any_arg(nmasks, 0);
  for (std::size_t mask = 0; mask < nmasks; ++mask) {
    best_any[mask] = std::max(best_exact[mask].profit, 0.0);
    any_arg[mask] = best_exact[mask].profit > 0.0 ? mask : 0;
    for (int b = 0; b < n; ++b) {
      if (!(mask >> b & 1)) continue;
      const std::size_t child = mask & ~(std::size_t{1} << b);
      if (best_any[child] > best_any[mask] + 1e-12) {
        best_any[mask] = best_any[child];
        any_arg[mask] = any_arg[child];
      }
    }
  }

  // Split the site set across vehicles.
  const std::size_t full = nmasks - 1;
  std::vector<std::vector<double>> fk(inst.m + 1, std::vector<double>(nmasks, 0.0));
  std::vector<std::vector<std::size_t>> fk_arg(inst.m + 1,
                                               std::vector<std::size_t>(nmasks, 0));
  fk[1] = best_any;
  for (std::size_t mask = 0; mask < nmasks; ++mask) fk_arg[1][mask] = any_arg[mask];
  for (int k = 2; k <= inst.m; ++k) {
    for (std::size_t mask = 0; mask < nmasks; ++mask) {
      double best = fk[k - 1][mask];  // vehicle k idle
      std::size_t arg = 0;
      for (std::size_t sub = mask; sub; sub = (sub - 1) & mask) {
        const double v = best_any[sub] + fk[k - 1][mask & ~sub];
        if (v > best + 1e-12) {
          best = v;
          arg = any_arg[sub];
        }
      }
      fk[k][mask] = best;
      fk_arg[k][mask] = arg;
    }
  }

  // Reconstruct one route from its exact-mask witness.
  auto rebuild = [&](std::size_t mask) {
    std::vector<Visit> visits;
    if (mask == 0) return visits;
    const End& end = best_exact[mask];
    std::size_t cur = mask;
    int last = end.last, t = end.t, load = end.load;
    double c = dp.get(cur, last, t, load);
    while (true) {
      const Site& s = inst.sites[last];
      visits.push_back({s.id, static_cast<double>(t) / g,
                        static_cast<double>(site_units(last, t)) / g});
      const std::size_t rest = cur & ~(std::size_t{1} << last);
      if (rest == 0) break;
      const int load2 = load - site_units(last, t);
      bool found = false;
      for (int pl = 0; pl < n && !found; ++pl) {
        if (!(rest >> pl & 1)) continue;
        const double leg = distance(inst.sites[pl].pos(), s.pos());
        for (int t2 = 0; t2 < nt && !found; ++t2) {
          if (t < std::max(s.e * g, t2 + ceil_grid(leg * g))) continue;
          const double pc = dp.get(rest, pl, t2, load2);
          if (pc == kInf) continue;
          if (std::abs(pc + leg - c) <= 1e-9) {
            cur = rest;
            last = pl;
            t = t2;
            load = load2;
            c = pc;
            found = true;
          }
        }
      }
      if (!found) throw std::logic_error("oracle: backtrack failed");
    }
    std::reverse(visits.begin(), visits.end());
    return visits;
  };

  std::size_t remaining = full;
  for (int k = inst.m; k >= 1; --k) {
    const std::size_t mask = fk_arg[k][remaining];
    sol.routes[k - 1].visits = rebuild(mask);
    remaining &= ~mask;
  }
  return sol;
}

double solve_exact_tsp(const Point& depot, const std::vector<Point>& points) {
  const int n = static_cast<int>(points.size());
  if (n > 10) throw OracleRefusal("oracle refusal: tsp limited to 10 points");
  if (n == 0) return 0.0;
  const std::size_t nmasks = std::size_t{1} << n;
  std::vector<std::vector<double>> dp(nmasks, std::vector<double>(n, kInf));
  for (int j = 0; j < n; ++j)
    dp[std::size_t{1} << j][j] = distance(depot, points[j]);
  for (std::size_t mask = 1; mask < nmasks; ++mask) {
    for (int last = 0; last < n; ++last) {
      if (!(mask >> last & 1) || dp[mask][last] == kInf) continue;
      for (int j = 0; j < n; ++j) {
        if (mask >> j & 1) continue;
        const std::size_t next = mask | (std::size_t{1} << j);
        dp[next][j] = std::min(dp[next][j],
                               dp[mask][last] + distance(points[last], points[j]));
      }
    }
  }
  double best = kInf;
  for (int last = 0; last < n; ++last)
    best = std::min(best, dp[nmasks - 1][last] + distance(points[last], depot));
  return best;
}

namespace {

void segment_dfs(const SegmentProblem& p, std::vector<bool>& used, int last,
                 double t, double load, double cost, double* best) {
  const double close = last < 0 ? 0.0 : p.dist_depot(last);
  *best = std::max(*best, load - cost - close);
  const int n = static_cast<int>(p.copies.size());
  for (int j = 0; j < n; ++j) {
    if (used[j]) continue;
    const SiteCopy& c = p.copies[j];
    if (load + c.q_fixed > p.capacity + kQuantityTol) continue;
    const double leg = last < 0 ? p.dist_depot(j) : p.dist(last, j);
    const double arrive = std::max(t + leg, c.win_start);
    if (arrive > c.win_end + kTimeTol) continue;
    used[j] = true;
    segment_dfs(p, used, j, std::min(arrive, c.win_end), load + c.q_fixed,
                cost + leg, best);
    used[j] = false;
  }
}

}  // namespace

double best_segment_profit(const SegmentProblem& p) {
  if (p.copies.size() > 8)
    throw OracleRefusal("oracle refusal: segment brute force limited to 8 copies");
  double best = 0.0;
  std::vector<bool> used(p.copies.size(), false);
  segment_dfs(p, used, -1, 0.0, 0.0, 0.0, &best);
  return best;
}

}  // namespace mprp
