#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qtzopt/quantize.hpp"
#include "qtzopt/rng.hpp"

using namespace qtzopt;

TEST_CASE("quantize rounds half up with floor toward -inf") {
  CHECK(quantize(1.3, 1.0) == 1.0);
  CHECK(quantize(0.75, 2.0) == 1.0);  // half-grid point rounds up
  CHECK(quantize(-0.3, 4.0) == -0.25);
  CHECK(quantize(2.0, 8.0) == 2.0);
}

TEST_CASE("quantize domain errors") {
  CHECK_THROWS_AS(quantize(std::nan(""), 1.0), std::domain_error);
  CHECK_THROWS_AS(quantize(1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(quantize(1.0, -2.0), std::domain_error);
  CHECK_THROWS_AS(quantize(std::numeric_limits<double>::infinity(), 1.0), std::domain_error);
}

TEST_CASE("quantization_error examples") {
  CHECK(quantization_error(1.3, 1.0) == doctest::Approx(-0.3).epsilon(1e-12));
  CHECK(quantization_error(2.0, 8.0) == 0.0);
  CHECK(quantization_error(0.6, 2.0) == doctest::Approx(-0.1).epsilon(1e-12));
}

TEST_CASE("initial_gamma matches the bit-length oracle") {
  CHECK(initial_gamma(2159.27, 2) == std::ldexp(1.0, -11));
  CHECK(initial_gamma(0.0, 2) == 1.0);
  CHECK(initial_gamma(7.0, 2) == std::ldexp(1.0, -3));  // log2(8) lands exactly

  // Oracle: gamma = 2^-e with e the bit length of floor(f0+1) minus one,
  // adjusted when f0+1 is an exact power of two.
  Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    double f0 = rng.uniform(0.0, 1e9);
    double g = initial_gamma(f0, 2);
    int e = 0;
    auto v = static_cast<unsigned long long>(f0 + 1.0);
    while (v >>= 1ull) ++e;
    // e = floor(log2(floor(f0+1))); equals floor(log2(f0+1)) unless the
    // fractional part pushes f0+1 past the next power of two (it cannot,
    // since floor only discards the fraction below that power).
    double lo = std::ldexp(1.0, e);
    double hi = std::ldexp(1.0, e + 1);
    CHECK(lo <= f0 + 1.0);
    if (f0 + 1.0 < hi) CHECK(g == std::ldexp(1.0, -e));
  }
  CHECK_THROWS_AS(initial_gamma(-1.0, 2), std::domain_error);
  CHECK_THROWS_AS(initial_gamma(1.0, 1), std::domain_error);
}

TEST_CASE("QuantizerState advance multiplies qp by the base") {
  QuantizerState s(1.0, 2, 0);
  CHECK(s.qp() == 1.0);
  CHECK(s.advance());
  CHECK(s.qp() == 2.0);
  CHECK(s.power() == 1);

  QuantizerState t(std::ldexp(1.0, -11), 2, 3);
  CHECK(t.qp() == std::ldexp(1.0, -8));

  QuantizerState u(1.0, 3, 0);
  double expect = 1.0;
  for (int k = 1; k <= 20; ++k) {
    CHECK(u.advance());
    expect *= 3.0;
    CHECK(u.qp() == expect);
    CHECK(u.step() == doctest::Approx(1.0 / expect).epsilon(1e-15));
  }
}

TEST_CASE("QuantizerState saturates instead of overflowing") {
  QuantizerState s(1.0, 2, 890);
  int advances = 0;
  while (s.advance() && advances < 100) ++advances;
  CHECK(advances < 100);
  double qp_at_cap = s.qp();
  CHECK(std::isfinite(qp_at_cap));
  CHECK_FALSE(s.advance());
  CHECK(s.qp() == qp_at_cap);
}

TEST_CASE("quantization band, idempotence, monotonicity on random pairs") {
  Rng rng(7);
  int n = 200000;  // the full 10^6-pair sweep runs in the acceptance suite
  for (int i = 0; i < n; ++i) {
    double f = rng.uniform(-1e6, 1e6);
    double qp = std::ldexp(1.0, static_cast<int>(rng.below(46)) - 16);  // 2^-16..2^29
    double q = quantize(f, qp);
    CHECK(std::fabs(q - f) <= 0.5 / qp);
    CHECK(quantize(q, qp) == q);
  }
  for (int i = 0; i < 20000; ++i) {
    double f = rng.uniform(-100.0, 100.0);
    double g = f + rng.uniform(0.0, 10.0);
    double qp = rng.uniform(0.05, 64.0);
    CHECK(quantize(f, qp) <= quantize(g, qp));
  }
}

TEST_CASE("refinement consistency between qp and base*qp") {
  Rng rng(13);
  for (int i = 0; i < 50000; ++i) {
    double f = rng.uniform(-1e4, 1e4);
    double qp = rng.uniform(0.01, 1e4);
    int b = 2 + static_cast<int>(rng.below(9));
    double bound = 0.5 / qp + 0.5 / (b * qp);
    CHECK(std::fabs(quantize(f, qp) - quantize(f, b * qp)) <= bound);
  }
}

TEST_CASE("quantization error of diffuse inputs: mean ~0, variance ~ qp^-2/12") {
  Rng rng(1234);
  const double qp = 4.0;
  const int n = 1000000;
  double s = 0.0, ss = 0.0;
  for (int i = 0; i < n; ++i) {
    double f = rng.uniform(-500.0, 500.0);
    double e = quantization_error(f, qp);
    s += e;
    ss += e * e;
  }
  double mean = s / n;
  double var = ss / n - mean * mean;
  double step = 1.0 / qp;
  CHECK(std::fabs(mean) < 0.01 * step);
  CHECK(var == doctest::Approx(step * step / 12.0).epsilon(0.01));
}
