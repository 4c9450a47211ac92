#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

#include "mprp/bench.hpp"
#include "mprp/oracle.hpp"
#include "mprp/solution.hpp"

using namespace mprp;

namespace {

Instance single_site(double rho, double Q = 100.0) {
  Instance inst;
  inst.depot = {0, 0};
  inst.m = 1;
  inst.Q = Q;
  inst.T = 5;
  inst.alpha = 2.0;
  inst.sites.push_back({1, 3, 4, rho, 0, 5});
  return inst;
}

}  // namespace

TEST_CASE("single site closed form: rho 2 breaks even") {
  // Distance 5 each way; waiting until t=5 collects 2*5 = 10 = travel cost.
  const Instance inst = single_site(2.0);
  const Solution sol = solve_exact(inst, {});
  CHECK(profit(sol, inst) == doctest::Approx(0.0));
  CHECK(check_feasibility(sol, inst).empty());
}

TEST_CASE("single site closed form: rho 3 earns 5") {
  const Instance inst = single_site(3.0);
  const Solution sol = solve_exact(inst, {});
  CHECK(profit(sol, inst) == doctest::Approx(5.0));
  bool visited = false;
  for (const Route& r : sol.routes)
    for (const Visit& v : r.visits) {
      visited = true;
      CHECK(v.site == 1);
      CHECK(v.t == doctest::Approx(5.0));
      CHECK(v.q == doctest::Approx(15.0));
    }
  CHECK(visited);
}

TEST_CASE("unprofitable sites are skipped entirely") {
  Instance inst = single_site(1.0);  // q_max 5 < round trip 10
  const Solution sol = solve_exact(inst, {});
  CHECK(profit(sol, inst) == doctest::Approx(0.0));
  for (const Route& r : sol.routes) CHECK(r.visits.empty());
}

TEST_CASE("capacity renders an oversupplied site unvisitable") {
  // Travel alone takes until t=5, where the site already holds 15; a visit
  // must take the full accumulated supply, so Q=12 rules the site out.
  const Instance inst = single_site(3.0, /*Q=*/12.0);
  const Solution sol = solve_exact(inst, {});
  CHECK(profit(sol, inst) == doctest::Approx(0.0));
  for (const Route& r : sol.routes) CHECK(r.visits.empty());

  // With Q=15 the visit at t=5 fits exactly.
  const Instance fits = single_site(3.0, /*Q=*/15.0);
  const Solution sol2 = solve_exact(fits, {});
  CHECK(profit(sol2, inst) == doctest::Approx(5.0));
  CHECK(check_feasibility(sol2, fits).empty());
}

TEST_CASE("size caps trigger a refusal carrying the cap") {
  Instance inst = single_site(3.0);
  OracleConfig cfg;
  cfg.max_sites = 0;
  CHECK_THROWS_AS(solve_exact(inst, cfg), OracleRefusal);
  inst.m = 5;
  CHECK_THROWS_AS(solve_exact(inst, {}), OracleRefusal);
}

TEST_CASE("fractional production rates are refused") {
  const Instance inst = single_site(2.5);
  CHECK_THROWS_AS(solve_exact(inst, {}), OracleRefusal);
}

TEST_CASE("oracle output is always feasible on random instances") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GenParams gp;
    gp.seed = seed;
    gp.n = 4;
    gp.m = 2;
    gp.T = 8;
    gp.Q = 15;
    const Instance inst = generate(gp);
    const Solution sol = solve_exact(inst, {});
    CHECK(check_feasibility(sol, inst).empty());
    CHECK(profit(sol, inst) >= -1e-9);  // the empty solution is admissible
  }
}

TEST_CASE("doubling the grid never decreases the oracle profit") {
  for (std::uint64_t seed = 21; seed <= 32; ++seed) {
    GenParams gp;
    gp.seed = seed;
    gp.n = 3;
    gp.m = 1;
    gp.T = 6;
    gp.Q = 12;
    const Instance inst = generate(gp);
    OracleConfig cfg;
    cfg.grid = 2;
    const double coarse = profit(solve_exact(inst, cfg), inst);
    cfg.grid = 4;
    const double fine = profit(solve_exact(inst, cfg), inst);
    CHECK(fine >= coarse - 1e-9);
  }
}

TEST_CASE("two vehicles can beat one on a capacity-bound instance") {
  Instance inst;
  inst.depot = {0, 0};
  inst.Q = 10.0;
  inst.T = 5;
  inst.alpha = 2.0;
  inst.sites.push_back({1, 1, 0, 2.0, 0, 5});
  inst.sites.push_back({2, -1, 0, 2.0, 0, 5});
  inst.m = 1;
  const double one = profit(solve_exact(inst, {}), inst);
  inst.m = 2;
  const double two = profit(solve_exact(inst, {}), inst);
  CHECK(two > one + 1e-9);
  // Each vehicle parks at its own site until t=5, collecting exactly Q = 10
  // for a round trip of 2: profit 2 * (10 - 2).
  CHECK(two == doctest::Approx(16.0));
}

TEST_CASE("tsp closed forms") {
  CHECK(solve_exact_tsp({0, 0}, {}) == doctest::Approx(0.0));
  CHECK(solve_exact_tsp({0, 0}, {{3, 4}}) == doctest::Approx(10.0));
  CHECK(solve_exact_tsp({0, 0}, {{0, 1}, {1, 0}, {1, 1}}) == doctest::Approx(4.0));
  CHECK_THROWS_AS(
      solve_exact_tsp({0, 0}, std::vector<Point>(11, Point{1, 1})), OracleRefusal);
}

TEST_CASE("tsp is order-invariant") {
  std::mt19937 rng(83);
  std::uniform_real_distribution<double> c(0.0, 10.0);
  std::vector<Point> pts;
  for (int i = 0; i < 7; ++i) pts.push_back({c(rng), c(rng)});
  const double base = solve_exact_tsp({0, 0}, pts);
  std::shuffle(pts.begin(), pts.end(), rng);
  CHECK(solve_exact_tsp({0, 0}, pts) == doctest::Approx(base));
}

TEST_CASE("best_segment_profit on simple segments") {
  SegmentProblem p;
  p.depot = {0, 0};
  p.capacity = 100.0;
  p.T = 10;
  CHECK(best_segment_profit(p) == doctest::Approx(0.0));  // empty tour

  p.copies.push_back({1, 2, 3, 4, 0.0, 10.0, 12.0});
  CHECK(best_segment_profit(p) == doctest::Approx(2.0));  // 12 - 10

  p.copies.push_back({2, 2, 30, 40, 0.0, 10.0, 1.0});  // 50 away: unreachable
  CHECK(best_segment_profit(p) == doctest::Approx(2.0));
}

TEST_CASE("best_segment_profit respects the capacity") {
  SegmentProblem p;
  p.depot = {0, 0};
  p.capacity = 12.0;
  p.T = 20;
  p.copies.push_back({1, 2, 1, 0, 0.0, 20.0, 8.0});
  p.copies.push_back({2, 2, 2, 0, 0.0, 20.0, 8.0});
  // Both together exceed Q; one alone earns 8 - 2 = 6 (nearer) or 8 - 4 = 4.
  CHECK(best_segment_profit(p) == doctest::Approx(6.0));
}

TEST_CASE("best_segment_profit size cap") {
  SegmentProblem p;
  p.depot = {0, 0};
  p.capacity = 100.0;
  p.T = 10;
  for (int i = 0; i < 9; ++i) p.copies.push_back({i + 1, 2, 1, 1, 0.0, 10.0, 1.0});
  CHECK_THROWS_AS(best_segment_profit(p), OracleRefusal);
}
