#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

#include "mprp/instance.hpp"

using namespace mprp;

namespace {

Instance two_site_instance(double q1_rho, double q2_rho, double alpha) {
  Instance inst;
  inst.depot = {0, 0};
  inst.m = 1;
  inst.Q = 5;
  inst.T = 10;
  inst.alpha = alpha;
  inst.sites.push_back({1, 1, 0, q1_rho, 0, 10});
  inst.sites.push_back({2, 0, 1, q2_rho, 0, 10});
  return inst;
}

}  // namespace

TEST_CASE("supply is zero outside the window and linear inside") {
  Site s{1, 0, 0, 2.0, 1, 5};
  CHECK(supply_at(s, 0.5) == doctest::Approx(0.0));
  CHECK(supply_at(s, 1.0) == doctest::Approx(0.0));  // sites start empty
  CHECK(supply_at(s, 4.0) == doctest::Approx(6.0));
  CHECK(supply_at(s, 5.0) == doctest::Approx(s.q_max()));
  CHECK(supply_at(s, 5.5) == doctest::Approx(0.0));
  CHECK_THROWS_AS(supply_at(s, -0.1), std::invalid_argument);
}

TEST_CASE("supply is nondecreasing and piecewise linear on the window") {
  Site s{1, 0, 0, 1.5, 2, 9};
  double prev = -1.0;
  for (double t = 2.0; t <= 9.0; t += 0.01) {
    const double q = supply_at(s, t);
    CHECK(q >= prev - 1e-12);
    CHECK(q == doctest::Approx(1.5 * (t - 2.0)));
    prev = q;
  }
}

TEST_CASE("constant-supply sites offer q_max anywhere in the window") {
  Site s{1, 0, 0, 2.0, 1, 5, true};
  CHECK(supply_at(s, 1.0) == doctest::Approx(8.0));
  CHECK(supply_at(s, 3.0) == doctest::Approx(8.0));
  CHECK(supply_at(s, 0.5) == doctest::Approx(0.0));
}

TEST_CASE("distance basics") {
  CHECK(distance({0, 0}, {3, 4}) == doctest::Approx(5.0));
  CHECK(distance({1, 1}, {1, 1}) == doctest::Approx(0.0));
  CHECK(distance({0, 0}, {1, 1}) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("distance satisfies the metric axioms on random triples") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> coord(-50.0, 50.0);
  for (int i = 0; i < 500; ++i) {
    const Point a{coord(rng), coord(rng)};
    const Point b{coord(rng), coord(rng)};
    const Point c{coord(rng), coord(rng)};
    CHECK(distance(a, b) == doctest::Approx(distance(b, a)));
    CHECK(distance(a, a) == doctest::Approx(0.0));
    CHECK(distance(a, c) <= distance(a, b) + distance(b, c) + 1e-9);
    CHECK(distance(a, b) >= 0.0);
  }
}

TEST_CASE("validate accepts equal quantities for any alpha > 1") {
  Instance inst = two_site_instance(1.0, 1.0, 2.0);  // q_max = {10, 10}
  inst.Q = 5;  // below the sum, capacity meaningful
  CHECK(validate(inst).empty());
}

TEST_CASE("validate flags discrepancy violations with the offending sites") {
  Instance inst = two_site_instance(0.1, 1.0, 2.0);  // q_max = {1, 10}
  const auto issues = validate(inst);
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].severity == Severity::Error);
  CHECK(issues[0].sites == std::vector<int>{2, 1});
}

TEST_CASE("validate warns when the capacity constraint is vacuous") {
  Instance inst = two_site_instance(1.0, 1.0, 2.0);
  inst.Q = 25.0;  // >= sum q_max = 20
  const auto issues = validate(inst);
  REQUIRE(issues.size() == 1);
  CHECK(issues[0].severity == Severity::Warning);
  CHECK(!has_errors(issues));
}

TEST_CASE("validate catches malformed windows, ids and alpha") {
  Instance inst = two_site_instance(1.0, 1.0, 2.0);
  inst.sites[1].id = 1;
  inst.sites[0].e = 5;
  inst.sites[0].l = 5;
  inst.alpha = 1.0;
  CHECK(has_errors(validate(inst)));
}

TEST_CASE("validate requires integral Q and q_max in mprp mode") {
  Instance inst = two_site_instance(1.0, 1.0, 2.0);
  inst.Q = 5.5;
  CHECK(!has_errors(validate(inst)));
  CHECK(has_errors(validate(inst, /*mprp_mode=*/true)));
}

TEST_CASE("validate is pure") {
  Instance inst = two_site_instance(0.1, 1.0, 2.0);
  const auto first = validate(inst);
  const auto second = validate(inst);
  REQUIRE(first.size() == second.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    CHECK(first[i].message == second[i].message);
    CHECK(first[i].sites == second[i].sites);
  }
}

TEST_CASE("instance JSON round trip") {
  Instance inst = two_site_instance(1.0, 1.5, 3.0);
  inst.depot = {2.5, -1.0};
  const Instance back = parse_instance(instance_to_json(inst));
  REQUIRE(back.sites.size() == 2);
  CHECK(back.depot.x == doctest::Approx(2.5));
  CHECK(back.m == inst.m);
  CHECK(back.Q == doctest::Approx(inst.Q));
  CHECK(back.alpha == doctest::Approx(inst.alpha));
  CHECK(back.sites[1].rho == doctest::Approx(1.5));
  CHECK(instance_to_json(back) == instance_to_json(inst));
}

TEST_CASE("site lookup by id") {
  Instance inst = two_site_instance(1.0, 1.0, 2.0);
  CHECK(inst.site(2).y == doctest::Approx(1.0));
  CHECK(inst.find_site(7) == nullptr);
  CHECK_THROWS_AS(inst.site(7), std::out_of_range);
}
