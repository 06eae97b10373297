#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qtzopt/rng.hpp"
#include "qtzopt/theory.hpp"

using namespace qtzopt;

namespace {

// Independent exact-rational check of the residual on dyadic inputs:
// builds f = num/2^s directly and evaluates both sides as fractions over
// the common denominator b^t * 2^s using 128-bit integers.
bool oracle_residual(double f, int base, int t, double* out) {
  double fb = std::floor(f);
  double frac = f - fb;
  int ex = 0;
  double man = std::frexp(frac, &ex);
  if (frac == 0.0) {
    *out = 0.0;
    return true;
  }
  if (ex < -50) return false;  // oracle keeps to comfortably exact range
  auto m = static_cast<__int128>(man * 0x1.0p53);
  int s = 53 - ex;
  __int128 bt = 1;
  for (int i = 0; i < t; ++i) bt *= base;
  // f_t^Q - RHS = q/b^t - frac + frac/b^t with q = floor(frac b^t)
  __int128 q = (m * bt) >> s;
  long double num = static_cast<long double>(q) * std::pow(2.0L, static_cast<long double>(s)) -
                    static_cast<long double>(bt - 1) * static_cast<long double>(m);
  long double den = static_cast<long double>(bt) * std::pow(2.0L, static_cast<long double>(s));
  *out = static_cast<double>(num / den);
  return true;
}

}  // namespace

TEST_CASE("adiabatic residual worked examples") {
  CHECK(adiabatic_residual(5.8125, 2, 2) == 0.140625);  // exact dyadic case
  CHECK(adiabatic_residual(7.0, 2, 5) == 0.0);
  CHECK(adiabatic_residual(123.0, 10, 3) == 0.0);
  CHECK(std::fabs(adiabatic_residual(5.8125, 2, 2)) < 0.25);
  CHECK_THROWS_AS(adiabatic_residual(-1.0, 2, 2), std::domain_error);
  CHECK_THROWS_AS(adiabatic_residual(1.0, 1, 2), std::domain_error);
  CHECK_THROWS_AS(adiabatic_residual(1.0, 2, 0), std::domain_error);
}

TEST_CASE("adiabatic residual bound and oracle agreement on fuzz inputs") {
  Rng rng(606);
  const int bases[] = {2, 3, 10};
  for (int i = 0; i < 100000; ++i) {
    double f = rng.uniform(0.0, 100.0);
    int b = bases[rng.below(3)];
    int t = 1 + static_cast<int>(rng.below(20));
    REQUIRE(adiabatic_residual_within_bound(f, b, t));
    double r = adiabatic_residual(f, b, t);
    double bound = std::pow(static_cast<double>(b), -t);
    REQUIRE(std::fabs(r) < bound * (1.0 + 1e-12));
    double oracle = 0.0;
    if (oracle_residual(f, b, t, &oracle))
      REQUIRE(r == doctest::Approx(oracle).epsilon(1e-9));
  }
}

TEST_CASE("sup limit closed form, base-2 collapse, and recursion convergence") {
  CHECK(sup_limit(1.0, 0.5, 2) == 1.0);
  CHECK(sup_limit(-3.25, 0.125, 2) == -3.25);
  CHECK(sup_limit(1.0, 0.3, 3) == doctest::Approx(1.025).epsilon(1e-14));
  CHECK_THROWS_AS(sup_limit(1.0, 0.5, 1), std::domain_error);

  for (int b : {2, 3, 5, 10}) {
    double closed = sup_limit(2.0, 0.7, b);
    double prev = sup_recursion(2.0, 0.7, b, 1);
    for (int steps = 2; steps <= 60; ++steps) {
      double cur = sup_recursion(2.0, 0.7, b, steps);
      REQUIRE(cur <= prev);  // partial sums decrease monotonically...
      if (steps <= 12) REQUIRE(cur < prev);  // ...strictly until the terms underflow
      REQUIRE(cur >= closed - 1e-12);
      prev = cur;
    }
    CHECK(sup_recursion(2.0, 0.7, b, 60) == doctest::Approx(closed).epsilon(1e-13));
  }
}

TEST_CASE("tunneling factor") {
  TunnelingParams flat{1.0, 1.0, 3.0, 3.0, 2.0};
  CHECK(tunneling_factor(flat) == 1.0);

  TunnelingParams p{1.0, 0.5, 1.0, 0.0, 1.0};
  CHECK(tunneling_factor(p) == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));

  TunnelingParams below{1.0, 1.0, 1.0, 2.0, 1.0};
  CHECK_THROWS_AS(tunneling_factor(below), std::domain_error);

  // strictly decreasing in width, mass, and barrier height
  double prev = 1.0;
  for (double w : {0.5, 1.0, 2.0, 4.0}) {
    TunnelingParams q{1.0, 1.0, 1.0, 0.0, w};
    double v = tunneling_factor(q);
    CHECK(v < prev);
    CHECK(v > 0.0);
    prev = v;
  }
  prev = 1.0;
  for (double m : {0.5, 1.0, 2.0, 4.0}) {
    TunnelingParams q{1.0, m, 1.0, 0.0, 1.0};
    double v = tunneling_factor(q);
    CHECK(v < prev);
    prev = v;
  }
  prev = 1.0;
  for (double v0 : {0.5, 1.0, 2.0, 4.0}) {
    TunnelingParams q{1.0, 1.0, v0, 0.0, 1.0};
    double v = tunneling_factor(q);
    CHECK(v < prev);
    prev = v;
  }

  // main-text variant keeps the width outside the exponential
  TunnelingParams wide{1.0, 0.5, 1.0, 0.0, 3.0};
  CHECK(tunneling_factor(wide, true) == doctest::Approx(3.0 * std::exp(-2.0)).epsilon(1e-12));
}

TEST_CASE("two-level eigenvalues") {
  auto [lo, hi] = two_level_eigs(0.0, 0.0, 2.0);
  CHECK(lo == -1.0);
  CHECK(hi == 1.0);
  auto [a, b] = two_level_eigs(1.0, 3.0, 0.0);
  CHECK(a == 1.0);
  CHECK(b == 3.0);

  // oracle: trace and determinant identities of the 2x2 matrix
  Rng rng(55);
  for (int i = 0; i < 10000; ++i) {
    double e1 = rng.uniform(-50, 50), e2 = rng.uniform(-50, 50), d = rng.uniform(-10, 10);
    auto [x, y] = two_level_eigs(e1, e2, d);
    REQUIRE(x <= y);
    REQUIRE(std::fabs(x + y - (e1 + e2)) <= 1e-12 * (1.0 + std::fabs(e1 + e2)));
    REQUIRE(std::fabs(x * y - (e1 * e2 - 0.25 * d * d)) <=
            1e-9 * (1.0 + std::fabs(e1 * e2) + d * d));
  }
}
