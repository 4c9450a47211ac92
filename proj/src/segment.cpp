#include "mprp/segment.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace mprp {

double SegmentProblem::dist(int a, int b) const {
  const SiteCopy& ca = copies[a];
  const SiteCopy& cb = copies[b];
  if (ca.site_id == cb.site_id) return 0.0;
  return distance(ca.pos(), cb.pos());
}

double SegmentProblem::dist_depot(int a) const {
  return distance(depot, copies[a].pos());
}

double copy_route_reward(const CopyRoute& r, const SegmentProblem& p) {
  double total = 0.0;
  for (const CopyVisit& v : r) total += p.copies[v.copy].q_fixed;
  return total;
}

double copy_route_cost(const CopyRoute& r, const SegmentProblem& p) {
  if (r.empty()) return 0.0;
  double cost = p.dist_depot(r.front().copy);
  for (std::size_t i = 1; i < r.size(); ++i)
    cost += p.dist(r[i - 1].copy, r[i].copy);
  cost += p.dist_depot(r.back().copy);
  return cost;
}

double copy_route_profit(const CopyRoute& r, const SegmentProblem& p) {
  return copy_route_reward(r, p) - copy_route_cost(r, p);
}

bool copy_route_feasible(const CopyRoute& r, const SegmentProblem& p) {
  double load = 0.0;
  double prev_t = 0.0;
  int prev = -1;
  std::vector<bool> seen(p.copies.size(), false);
  for (const CopyVisit& v : r) {
    if (v.copy < 0 || v.copy >= static_cast<int>(p.copies.size())) return false;
    if (seen[v.copy]) return false;  // each copy at most once
    seen[v.copy] = true;
    const SiteCopy& c = p.copies[v.copy];
    if (v.t < c.win_start - kTimeTol || v.t > c.win_end + kTimeTol) return false;
    const double leg = prev < 0 ? p.dist_depot(v.copy) : p.dist(prev, v.copy);
    if (v.t - prev_t < leg - kTimeTol) return false;
    load += c.q_fixed;
    prev = v.copy;
    prev_t = v.t;
  }
  return load <= p.capacity + kQuantityTol;
}

namespace {

// Earliest-arrival times for a fixed visit order; false when some window is
// missed.
bool earliest_times(const std::vector<int>& order, const SegmentProblem& p,
                    std::vector<double>* times) {
  times->resize(order.size());
  double t = 0.0;
  int prev = -1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const SiteCopy& c = p.copies[order[i]];
    const double leg = prev < 0 ? p.dist_depot(order[i]) : p.dist(prev, order[i]);
    t = std::max(t + leg, c.win_start);
    if (t > c.win_end + kTimeTol) return false;
    (*times)[i] = std::min(t, c.win_end);
    prev = order[i];
  }
  return true;
}

CopyRoute route_from_order(const std::vector<int>& order, const SegmentProblem& p) {
  std::vector<double> times;
  if (!earliest_times(order, p, &times)) return {};
  CopyRoute r;
  for (std::size_t i = 0; i < order.size(); ++i) r.push_back({order[i], times[i]});
  return r;
}

struct Label {
  double t = 0.0;     // earliest arrival at `last`
  double cost = 0.0;  // travel cost from the depot
  int prev_last = -1;
  int prev_idx = -1;
  bool dead = false;  // dominated; kept so parent indices stay stable
};

CopyRoute solve_exact(const SegmentProblem& p) {
  const int n = static_cast<int>(p.copies.size());
  const std::size_t nmasks = std::size_t{1} << n;

  std::vector<double> mask_q(nmasks, 0.0);
  for (std::size_t mask = 1; mask < nmasks; ++mask) {
    const int bit = std::countr_zero(mask);
    mask_q[mask] = mask_q[mask & (mask - 1)] + p.copies[bit].q_fixed;
  }

  // labels[mask * n + last]
  std::vector<std::vector<Label>> labels(nmasks * n);
  auto push = [&](std::size_t mask, int last, Label lab) {
    auto& bucket = labels[mask * n + last];
    for (Label& other : bucket) {
      if (other.dead) continue;
      if (other.t <= lab.t + kTimeTol && other.cost <= lab.cost + kTimeTol) return;
    }
    for (Label& other : bucket)
      if (!other.dead && lab.t <= other.t && lab.cost <= other.cost)
        other.dead = true;
    bucket.push_back(lab);
  };

  for (int j = 0; j < n; ++j) {
    const SiteCopy& c = p.copies[j];
    if (c.q_fixed > p.capacity + kQuantityTol) continue;
    const double leg = p.dist_depot(j);
    const double t = std::max(leg, c.win_start);
    if (t > c.win_end + kTimeTol) continue;
    push(std::size_t{1} << j, j, {std::min(t, c.win_end), leg, -1, -1});
  }

  for (std::size_t mask = 1; mask < nmasks; ++mask) {
    for (int last = 0; last < n; ++last) {
      if (!(mask >> last & 1)) continue;
      auto& bucket = labels[mask * n + last];
      for (std::size_t li = 0; li < bucket.size(); ++li) {
        if (bucket[li].dead) continue;
        const Label lab = bucket[li];
        for (int j = 0; j < n; ++j) {
          if (mask >> j & 1) continue;
          const std::size_t next = mask | (std::size_t{1} << j);
          if (mask_q[next] > p.capacity + kQuantityTol) continue;
          const SiteCopy& c = p.copies[j];
          const double leg = p.dist(last, j);
          const double t = std::max(lab.t + leg, c.win_start);
          if (t > c.win_end + kTimeTol) continue;
          push(next, j, {std::min(t, c.win_end), lab.cost + leg, last,
                         static_cast<int>(li)});
        }
      }
    }
  }

  // Best reward, then lowest closed-route cost, then smallest mask.
  double best_reward = 0.0;
  double best_cost = 0.0;
  std::size_t best_mask = 0;
  int best_last = -1, best_idx = -1;
  for (std::size_t mask = 1; mask < nmasks; ++mask) {
    if (mask_q[mask] > p.capacity + kQuantityTol) continue;
    for (int last = 0; last < n; ++last) {
      if (!(mask >> last & 1)) continue;
      const auto& bucket = labels[mask * n + last];
      for (std::size_t li = 0; li < bucket.size(); ++li) {
        if (bucket[li].dead) continue;
        const double cost = bucket[li].cost + p.dist_depot(last);
        const bool better =
            mask_q[mask] > best_reward + kTimeTol ||
            (mask_q[mask] > best_reward - kTimeTol &&
             (cost < best_cost - kTimeTol ||
              (cost < best_cost + kTimeTol && best_last >= 0 && mask < best_mask)));
        if (best_last < 0 || better) {
          best_reward = mask_q[mask];
          best_cost = cost;
          best_mask = mask;
          best_last = last;
          best_idx = static_cast<int>(li);
        }
      }
    }
  }
  if (best_last < 0 || best_reward <= 0.0) return {};

  std::vector<int> order;
  std::size_t mask = best_mask;
  int last = best_last, idx = best_idx;
  while (last >= 0) {
    order.push_back(last);
    const Label& lab = labels[mask * n + last][idx];
    mask &= ~(std::size_t{1} << last);
    const int pl = lab.prev_last;
    idx = lab.prev_idx;
    last = pl;
  }
  std::reverse(order.begin(), order.end());
  return route_from_order(order, p);
}

CopyRoute solve_heuristic(const SegmentProblem& p) {
  const int n = static_cast<int>(p.copies.size());
  std::vector<int> order;
  std::vector<bool> used(n, false);
  double load = 0.0;

  // Candidates by declared quantity descending (ties: lower index).
  std::vector<int> by_q(n);
  for (int i = 0; i < n; ++i) by_q[i] = i;
  std::stable_sort(by_q.begin(), by_q.end(), [&](int a, int b) {
    return p.copies[a].q_fixed > p.copies[b].q_fixed;
  });

  bool inserted = true;
  std::vector<double> times;
  while (inserted) {
    inserted = false;
    for (int cand : by_q) {
      if (used[cand]) continue;
      if (load + p.copies[cand].q_fixed > p.capacity + kQuantityTol) continue;
      double best_added = std::numeric_limits<double>::max();
      std::size_t best_pos = 0;
      bool found = false;
      for (std::size_t pos = 0; pos <= order.size(); ++pos) {
        std::vector<int> trial = order;
        trial.insert(trial.begin() + pos, cand);
        if (!earliest_times(trial, p, &times)) continue;
        const int before = pos == 0 ? -1 : trial[pos - 1];
        const int after = pos + 1 < trial.size() ? trial[pos + 1] : -1;
        const double d_in = before < 0 ? p.dist_depot(cand) : p.dist(before, cand);
        const double d_out = after < 0 ? p.dist_depot(cand) : p.dist(cand, after);
        const double d_old = (before < 0 && after < 0) ? 0.0
                             : before < 0              ? p.dist_depot(after)
                             : after < 0               ? p.dist_depot(before)
                                                       : p.dist(before, after);
        const double added = d_in + d_out - d_old;
        if (added < best_added - kTimeTol) {
          best_added = added;
          best_pos = pos;
          found = true;
        }
      }
      if (found) {
        order.insert(order.begin() + best_pos, cand);
        used[cand] = true;
        load += p.copies[cand].q_fixed;
        inserted = true;
      }
    }
  }

  // 2-opt with window feasibility, to a fixed point.
  bool improved = true;
  int guard = 0;
  while (improved && guard++ < 1000) {
    improved = false;
    for (std::size_t i = 0; i + 1 < order.size() && !improved; ++i) {
      for (std::size_t j = i + 1; j < order.size() && !improved; ++j) {
        std::vector<int> trial = order;
        std::reverse(trial.begin() + i, trial.begin() + j + 1);
        if (!earliest_times(trial, p, &times)) continue;
        const CopyRoute cur = route_from_order(order, p);
        const CopyRoute alt = route_from_order(trial, p);
        if (copy_route_cost(alt, p) < copy_route_cost(cur, p) - 1e-9) {
          order = trial;
          improved = true;
        }
      }
    }
  }
  return route_from_order(order, p);
}

}  // namespace

CopyRoute maximize_reward(const SegmentProblem& p, const SolverPolicy& policy) {
  if (p.copies.empty()) return {};
  const bool exact =
      policy.mode == SegmentMode::Exact ||
      (policy.mode == SegmentMode::Auto &&
       static_cast<int>(p.copies.size()) <= policy.exact_limit);
  return exact ? solve_exact(p) : solve_heuristic(p);
}

CopyRoute shortcut_pass(const CopyRoute& r, const SegmentProblem& p) {
  if (!copy_route_feasible(r, p))
    throw std::logic_error("shortcut_pass: input route infeasible");
  std::vector<int> order;
  for (const CopyVisit& v : r) order.push_back(v.copy);

  auto leg = [&](int a, int b) {  // -1 is the depot
    if (a < 0 && b < 0) return 0.0;
    if (a < 0) return p.dist_depot(b);
    if (b < 0) return p.dist_depot(a);
    return p.dist(a, b);
  };

  auto declared_profit = [&](const std::vector<int>& o) {
    double v = 0.0;
    for (std::size_t k = 0; k < o.size(); ++k) {
      v += p.copies[o[k]].q_fixed;
      v -= leg(k == 0 ? -1 : o[k - 1], o[k]);
    }
    if (!o.empty()) v -= leg(o.back(), -1);
    return v;
  };

  std::vector<double> times;
  bool improved = true;
  while (improved) {
    improved = false;

    // Phase 1: drop any contiguous block [i, j] whose detour (relative to
    // the direct arc prev -> next, depot legs included) costs more than its
    // declared quantity. Single visits are tried first; the whole route is
    // the largest block, so a net-losing route always empties out.
    bool changed = true;
    while (changed) {
      changed = false;
      const std::size_t n = order.size();
      for (std::size_t len = 1; len <= n && !changed; ++len) {
        for (std::size_t i = 0; i + len <= n; ++i) {
          const std::size_t j = i + len - 1;
          const int before = i == 0 ? -1 : order[i - 1];
          const int after = j + 1 < n ? order[j + 1] : -1;
          double removed = leg(before, order[i]) + leg(order[j], after);
          double reward = 0.0;
          for (std::size_t k = i; k <= j; ++k) {
            reward += p.copies[order[k]].q_fixed;
            if (k > i) removed += leg(order[k - 1], order[k]);
          }
          const double delta = (removed - leg(before, after)) - reward;
          if (delta <= 1e-12) continue;
          std::vector<int> trial = order;
          trial.erase(trial.begin() + i, trial.begin() + j + 1);
          if (!earliest_times(trial, p, &times)) continue;  // never by triangle ineq.
          order = trial;
          changed = true;
          break;
        }
      }
    }

    // Phase 2: keeping a single contiguous segment of the tour (shortcutting
    // everything before and after it) may beat the drop-wise fixed point;
    // adopt the best such segment if it improves the profit.
    const double current = declared_profit(order);
    std::vector<int> best_order = order;
    double best = current;
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (std::size_t j = i; j < order.size(); ++j) {
        std::vector<int> trial(order.begin() + i, order.begin() + j + 1);
        if (!earliest_times(trial, p, &times)) continue;
        const double v = declared_profit(trial);
        if (v > best + 1e-12) {
          best = v;
          best_order = trial;
        }
      }
    }
    if (best > current + 1e-12) {
      order = std::move(best_order);
      improved = true;
    }
  }
  return route_from_order(order, p);
}

double profit_lower_bound_factor(int T) {
  if (T < 2) throw std::invalid_argument("profit_lower_bound_factor: T must be >= 2");
  return 1.0 / (8.0 * std::numbers::ln2 * std::log2(static_cast<double>(T)));
}

}  // namespace mprp
