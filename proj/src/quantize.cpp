#include "qtzopt/quantize.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qtzopt {

namespace {

// Largest qp we let a state reach. Beyond this the grid is finer than double
// precision for any realistic objective anyway, and qp*f would start to
// overflow.
constexpr double kMaxQp = 0x1.0p900;

double pow_int(double b, int e) {
  if (b == 2.0) return std::ldexp(1.0, e);
  double r = 1.0, p = (e < 0) ? 1.0 / b : b;
  for (int k = (e < 0) ? -e : e; k > 0; k >>= 1) {
    if (k & 1) r *= p;
    p *= p;
  }
  return r;
}

}  // namespace

double quantize(double f, double qp) {
  if (!std::isfinite(f)) throw std::domain_error("quantize: non-finite input");
  if (!(qp > 0.0) || !std::isfinite(qp)) throw std::domain_error("quantize: qp must be positive");
  // floor(qp*f + 1/2) with the floor decided on the exact product. The fma
  // residual recovers the rounding of qp*f, which otherwise flips the floor
  // when the product lands within one ulp of a half-grid boundary.
  double p = qp * f;
  double e = std::fma(qp, f, -p);  // qp*f == p + e exactly
  double m = std::floor(p + 0.5);
  double d = (p - m) + 0.5;  // exact: p and m are close
  if (d + e < 0.0)
    m -= 1.0;
  else if (d + e >= 1.0)
    m += 1.0;
  return m / qp;
}

double quantization_error(double f, double qp) {
  return quantize(f, qp) - f;
}

double initial_gamma(double f0, int base) {
  if (!(f0 >= 0.0) || !std::isfinite(f0))
    throw std::domain_error("initial_gamma: objective value must be nonnegative");
  if (base < 2) throw std::domain_error("initial_gamma: base must be >= 2");
  // floor(log_base(f0+1)) as the largest e with base^e <= f0+1.
  const double target = f0 + 1.0;
  int e = 0;
  double p = 1.0;
  while (p * base <= target) {
    p *= base;
    ++e;
  }
  return pow_int(static_cast<double>(base), -e);
}

QuantizerState::QuantizerState(double gamma, int base, int power)
    : gamma_(gamma), base_(base), power_(power) {
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw std::domain_error("QuantizerState: gamma must be positive");
  if (base < 2) throw std::domain_error("QuantizerState: base must be >= 2");
  if (power < 0) throw std::domain_error("QuantizerState: power must be nonnegative");
  recompute();
}

void QuantizerState::recompute() {
  qp_ = gamma_ * pow_int(static_cast<double>(base_), power_);
}

bool QuantizerState::advance() {
  if (qp_ * base_ > kMaxQp) return false;
  ++power_;
  recompute();
  return true;
}

}  // namespace qtzopt
