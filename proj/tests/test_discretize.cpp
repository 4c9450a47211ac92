#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

#include "mprp/discretize.hpp"

using namespace mprp;

namespace {

Instance one_site(double rho, int e, int l, double alpha, double Q = 100.0) {
  Instance inst;
  inst.depot = {0, 0};
  inst.m = 1;
  inst.Q = Q;
  inst.T = l;
  inst.alpha = alpha;
  inst.sites.push_back({1, 1, 0, rho, e, l});
  return inst;
}

}  // namespace

TEST_CASE("interval count: smallest N with (1+eps)^(N-1) >= alpha") {
  CHECK(interval_count(4.0, 1.0) == 3);
  CHECK(interval_count(2.0, 1.0) == 2);
  CHECK(interval_count(2.0, 0.5) == 3);   // 1.5^2 = 2.25 >= 2
  CHECK(interval_count(2.0, 0.25) == 5);  // 1.25^4 ~ 2.44
  CHECK(interval_count(1.0001, 5.0) == 2);
  CHECK_THROWS_AS(interval_count(4.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(interval_count(1.0, 1.0), std::invalid_argument);
}

TEST_CASE("documented example: window [0,8], eps = 1, alpha = 4") {
  const Instance inst = one_site(1.0, 0, 8, 4.0);
  const ReducedInstance red = reduce(inst, {1.0});
  CHECK(red.N == 3);
  REQUIRE(red.copies.size() == 2);  // tau = 2, 3 (tau = 1 omitted)

  const auto [s1, e1] = interval_bounds(inst.sites[0], 1, red.N, 1.0);
  CHECK(s1 == doctest::Approx(0.0));
  CHECK(e1 == doctest::Approx(2.0));

  CHECK(red.copies[0].tau == 2);
  CHECK(red.copies[0].win_start == doctest::Approx(2.0));
  CHECK(red.copies[0].win_end == doctest::Approx(4.0));
  CHECK(red.copies[0].q_fixed == doctest::Approx(2.0));

  CHECK(red.copies[1].tau == 3);
  CHECK(red.copies[1].win_start == doctest::Approx(4.0));
  CHECK(red.copies[1].win_end == doctest::Approx(8.0));
  CHECK(red.copies[1].q_fixed == doctest::Approx(4.0));
}

TEST_CASE("intervals tile the window contiguously") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> eps_d(0.1, 2.0);
  std::uniform_real_distribution<double> alpha_d(1.2, 6.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double eps = eps_d(rng);
    const double alpha = alpha_d(rng);
    const Site s{1, 0, 0, 1.0, 2, 2 + 1 + static_cast<int>(rng() % 12)};
    const int N = interval_count(alpha, eps);
    double prev_end = static_cast<double>(s.e);
    for (int tau = 1; tau <= N; ++tau) {
      const auto [a, b] = interval_bounds(s, tau, N, eps);
      CHECK(a == doctest::Approx(prev_end));
      CHECK(b > a);
      prev_end = b;
    }
    CHECK(prev_end == doctest::Approx(static_cast<double>(s.l)));
  }
}

TEST_CASE("supply across one interval grows by exactly the factor (1+eps)") {
  const Instance inst = one_site(3.0, 1, 9, 4.0);
  for (double eps : {0.25, 0.5, 1.0}) {
    const ReducedInstance red = reduce(inst, {eps});
    for (const SiteCopy& c : red.copies) {
      const double left = supply_at(inst.sites[0], c.win_start);
      const double right = supply_at(inst.sites[0], c.win_end);
      CHECK(c.q_fixed == doctest::Approx(left));
      CHECK(right == doctest::Approx((1.0 + eps) * left));
    }
  }
}

TEST_CASE("copy count is (N-1) per site") {
  Instance inst = one_site(1.0, 0, 8, 4.0);
  inst.sites.push_back({2, 2, 2, 2.0, 1, 5});
  inst.sites.push_back({3, 3, 1, 1.0, 2, 6});
  for (double eps : {0.25, 0.5, 1.0}) {
    const ReducedInstance red = reduce(inst, {eps});
    CHECK(static_cast<int>(red.copies.size()) ==
          static_cast<int>(inst.sites.size()) * (red.N - 1));
  }
}

TEST_CASE("copies of one site are at distance zero, others keep the metric") {
  Instance inst = one_site(1.0, 0, 8, 4.0);
  inst.sites.push_back({2, 4, 4, 1.0, 0, 8});
  const ReducedInstance red = reduce(inst, {1.0});
  REQUIRE(red.copies.size() == 4);
  CHECK(red.dist(0, 1) == doctest::Approx(0.0));  // both site 1
  CHECK(red.dist(0, 2) == doctest::Approx(5.0));  // (1,0) to (4,4)
  CHECK(red.dist_depot(0) == doctest::Approx(1.0));
}

TEST_CASE("reduce rejects non-positive epsilon") {
  const Instance inst = one_site(1.0, 0, 8, 4.0);
  CHECK_THROWS_AS(reduce(inst, {0.0}), std::invalid_argument);
  CHECK_THROWS_AS(reduce(inst, {-1.0}), std::invalid_argument);
}

TEST_CASE("lift keeps the latest interval per site and realizes its supply") {
  const Instance inst = one_site(1.0, 0, 8, 4.0);
  const ReducedInstance red = reduce(inst, {1.0});
  // Visit tau=2 then tau=3 of the same site: only tau=3 survives.
  const CopyRoute r{{0, 2.5}, {1, 5.0}};
  const LiftResult lifted = lift_route(r, red, inst);
  REQUIRE(lifted.route.visits.size() == 1);
  CHECK(lifted.route.visits[0].site == 1);
  // Pushed to the interval's right end, realizing the full q_max.
  CHECK(lifted.route.visits[0].t == doctest::Approx(8.0));
  CHECK(lifted.route.visits[0].q == doctest::Approx(8.0));
  CHECK(lifted.declared_reward == doctest::Approx(4.0));
}

TEST_CASE("lift rejects infeasible reduced routes") {
  const Instance inst = one_site(1.0, 0, 8, 4.0);
  const ReducedInstance red = reduce(inst, {1.0});
  const CopyRoute early{{0, 1.0}};  // before the copy's interval
  const CopyRoute backwards{{0, 2.5}, {1, 0.5}};
  const CopyRoute unknown{{99, 3.0}};
  CHECK_THROWS_AS(lift_route(early, red, inst), std::logic_error);
  CHECK_THROWS_AS(lift_route(backwards, red, inst), std::logic_error);
  CHECK_THROWS_AS(lift_route(unknown, red, inst), std::logic_error);
}

TEST_CASE("empty route lifts to an empty route") {
  const Instance inst = one_site(1.0, 0, 8, 4.0);
  const ReducedInstance red = reduce(inst, {1.0});
  const LiftResult lifted = lift_route({}, red, inst);
  CHECK(lifted.route.visits.empty());
  CHECK(lifted.declared_reward == doctest::Approx(0.0));
}

TEST_CASE("two-sided bound: declared <= realized <= (1+eps) declared") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const double eps = 0.25 + 0.01 * static_cast<double>(rng() % 176);
    Instance inst;
    inst.depot = {0, 0};
    inst.m = 1;
    inst.Q = 1e9;  // no capacity cap: isolates the interval bound
    inst.T = 16;
    inst.alpha = 3.0;
    const int n = 1 + static_cast<int>(rng() % 4);
    for (int i = 1; i <= n; ++i) {
      const int e = static_cast<int>(rng() % 6);
      const int l = e + 2 + static_cast<int>(rng() % 8);
      inst.sites.push_back({i, 0.1 * static_cast<double>(rng() % 30),
                            0.1 * static_cast<double>(rng() % 30),
                            1.0 + static_cast<double>(rng() % 3), e, l});
    }
    const ReducedInstance red = reduce(inst, {eps});

    // Greedy earliest-feasible tour over the copies in index order.
    CopyRoute route;
    double t = 0.0;
    int prev = -1;
    for (int c = 0; c < static_cast<int>(red.copies.size()); ++c) {
      const double leg = prev < 0 ? red.dist_depot(c) : red.dist(prev, c);
      const double arrive = std::max(t + leg, red.copies[c].win_start);
      if (arrive > red.copies[c].win_end) continue;
      route.push_back({c, arrive});
      t = arrive;
      prev = c;
    }
    const LiftResult lifted = lift_route(route, red, inst);
    const double realized = route_reward(lifted.route);
    CHECK(realized >= lifted.declared_reward - 1e-9);
    CHECK(realized <= (1.0 + eps) * lifted.declared_reward + 1e-9);
  }
}

TEST_CASE("lift caps the realized load at the capacity") {
  // One site with q_max 8, capacity 5: the lifted visit is interpolated back
  // until the collected quantity hits Q exactly.
  const Instance inst = one_site(1.0, 0, 8, 4.0, /*Q=*/5.0);
  const ReducedInstance red = reduce(inst, {1.0});
  const LiftResult lifted = lift_route({{1, 4.5}}, red, inst);
  REQUIRE(lifted.route.visits.size() == 1);
  CHECK(lifted.route.visits[0].q == doctest::Approx(5.0));
  CHECK(lifted.route.visits[0].t == doctest::Approx(5.0));
}

TEST_CASE("lift sheds trailing visits when even the earliest schedule overflows") {
  Instance inst = one_site(1.0, 0, 8, 4.0, /*Q=*/5.0);
  inst.sites.push_back({2, 1, 0, 1.0, 0, 8});
  const ReducedInstance red = reduce(inst, {1.0});
  // Copies: [0]=site1 tau2 q2, [1]=site1 tau3 q4, [2]=site2 tau2 q2, [3]=site2 tau3 q4.
  // Both tau-3 copies collect 4 + 4 = 8 even at the earliest times, so the
  // tail is dropped; site 1 alone fits and is interpolated onto Q = 5.
  const LiftResult lifted = lift_route({{1, 4.5}, {3, 4.5}}, red, inst);
  REQUIRE(lifted.route.visits.size() == 1);
  CHECK(lifted.route.visits[0].site == 1);
  CHECK(lifted.route.visits[0].q == doctest::Approx(5.0));
}

TEST_CASE("linear-quantities compat mode declares q_max (tau - 1/2)/(N-1)") {
  const Instance inst = one_site(1.0, 0, 8, 4.0);
  ReduceOptions opts{1.0, /*linear_quantities=*/true};
  const ReducedInstance red = reduce(inst, opts);
  REQUIRE(red.copies.size() == 2);
  CHECK(red.copies[0].q_fixed == doctest::Approx(8.0 * 1.5 / 2.0));
  CHECK(red.copies[1].q_fixed == doctest::Approx(8.0 * 2.5 / 2.0));
}
