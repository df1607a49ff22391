#include <cmath>

#include <doctest.h>

#include "fracradon/constants.hpp"
#include "fracradon/error.hpp"
#include "fracradon/verify.hpp"

using namespace fracradon;
using doctest::Approx;

TEST_CASE("slicing constant") {
  CHECK(slicing_constant_cn(2) < 1.0);
  CHECK(slicing_constant_cn(5) < 1.0);
  CHECK(slicing_constant_cn(3) > 0.0);
}

TEST_CASE("known dovr bounds") {
  CHECK(*known_dovr_bound(StarBody::ball(3)) == 1.0);
  CHECK(*known_dovr_bound(StarBody::ellipsoid({1.0, 2.0})) == 1.0);
  CHECK(*known_dovr_bound(StarBody::cube(3)) == Approx(std::exp(1.0)));
  CHECK_FALSE(known_dovr_bound(StarBody::lp_ball(3, 1.0)).has_value());
  CHECK(volume(volume_one(StarBody::cube(3, 0.3))).value == Approx(1.0).epsilon(1e-8));
}

TEST_CASE("slicing inequality") {
  for (int n : {2, 3}) {
    const auto K = volume_one(StarBody::ball(n));
    const auto rep = verify_theorem1(K, Density::gaussian(n, 0.5), 1.0);
    CHECK(rep.verdict == Verdict::holds);
    CHECK(rep.lhs <= rep.rhs);
  }
  const auto C = StarBody::cube(3, 0.5);
  const auto rep = verify_theorem1(C, Density::indicator(C), std::exp(1.0));
  CHECK(rep.verdict == Verdict::holds);
  CHECK(rep.lhs == Approx(1.0).epsilon(1e-6));
}

TEST_CASE("fractional slicing inequality") {
  const auto K = volume_one(StarBody::ball(3));
  const auto f = Density::gaussian(3, 0.6);
  for (double q : {-0.5, 0.0, 0.5, 1.5}) {
    const auto rep = verify_theorem3(K, f, q, 1.0);
    CHECK(rep.verdict == Verdict::holds);
  }
  VerifyOptions generic;
  generic.pathway = Pathway::generic;
  CHECK_THROWS_AS(verify_theorem3(K, f, 1.0, 1.0, generic), OddOrderError);
  VerifyOptions odd;
  odd.pathway = Pathway::odd_limit;
  CHECK(verify_theorem3(K, f, 1.0, 1.0, odd).verdict == Verdict::holds);
  CHECK_THROWS_AS(verify_theorem3(K, f, 2.5, 1.0), DomainError);
  VerifyOptions explore;
  explore.allow_out_of_range = true;
  CHECK(verify_theorem3(K, f, 2.5, 1.0, explore).verdict == Verdict::inconclusive);
  const auto C = volume_one(StarBody::cube(2));
  CHECK(verify_theorem3(C, Density::bump(2, 0.8), 0.5, std::exp(1.0)).verdict == Verdict::holds);
}

TEST_CASE("normalized lower bound at order zero") {
  for (int n : {2, 3}) {
    const auto K = volume_one(StarBody::ball(n));
    const double r = std::pow(1.0 / unit_ball_volume(n), 1.0 / n);
    const auto rep = verify_eq7(K, Density::indicator(K), 0.0);
    const double section = unit_ball_volume(n - 1) * std::pow(r, n - 1);
    CHECK(rep.lhs == Approx(n * section * section).epsilon(1e-6));
    CHECK(rep.verdict == Verdict::holds);
  }
  const auto K = volume_one(StarBody::ball(2));
  CHECK_THROWS(verify_eq7(K, Density::gaussian(2, 1.0, 5.0), 0.5));
}

TEST_CASE("normalized lower bound is rotation invariant") {
  const auto K = volume_one(StarBody::ball(3));
  const std::vector<double> sigmas{0.2, 0.4, 0.4};
  auto mass_one = [&](const Direction& axis) {
    const auto f = Density::anisotropic_gaussian(sigmas, axis);
    const double m = integrate_over_body(K, f.function()).value;
    return Density::scaled(f, 1.0, 1.0 / m);
  };
  const auto a = verify_eq7(K, mass_one(Direction::axis(3, 0)), 0.5);
  const auto b = verify_eq7(K, mass_one(Direction({1.0, 1.0, 1.0})), 0.5);
  CHECK(a.lhs == Approx(b.lhs).epsilon(1e-3));
  CHECK(a.verdict == Verdict::holds);
}

TEST_CASE("implied dovr lower bound") {
  const auto K = volume_one(StarBody::ball(3));
  const auto f = Density::gaussian(3, 0.5);
  const auto d = implied_dovr_lower_bound(K, f, 0.5);
  CHECK(d.value > 0.0);
  CHECK(d.value <= 1.01);
  const auto d2 = implied_dovr_lower_bound(K, Density::scaled(f, 1.0, 2.0), 0.5);
  CHECK(d2.value == Approx(d.value).epsilon(1e-8));
}

TEST_CASE("sweep") {
  SweepConfig cfg;
  cfg.dims = {2, 3};
  cfg.qs = {0.0, 1.0, 1.5};
  const auto rows = sweep_table(cfg);
  CHECK(rows.size() == 6);
  CHECK(sweep_csv(rows) == sweep_csv(sweep_table(cfg)));
  for (const auto& r : rows) {
    if (r.q == 1.0) CHECK(r.pathway == "odd_limit");
    if (r.q >= r.n - 1) {
      CHECK(r.status == "out_of_theorem_range");
      CHECK_FALSE(r.implied_dovr.has_value());
    } else {
      CHECK(r.status == "ok");
      CHECK(r.c_measured > 0.0);
    }
  }
  CHECK(sweep_csv(rows).rfind("n,q,pathway,max_frac_deriv,c_measured,implied_dovr,int_K_f,budget,seed,status\n", 0) == 0);
  CHECK(sweep_json(rows).size() == 6);
}
