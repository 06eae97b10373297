#include "qtzopt/theory.hpp"

#include <cmath>
#include <stdexcept>

namespace qtzopt {

namespace {

struct DyadicResidual {
  __int128 numer = 0;  // residual * base^t * 2^k, exact
  int k = 0;
  double base_pow_t = 0.0;
  bool exact = false;
  double approx = 0.0;  // used when the exact path is out of range
};

DyadicResidual residual_parts(double f, int base, int t) {
  if (!(f >= 0.0) || !std::isfinite(f))
    throw std::domain_error("adiabatic_residual: f must be nonnegative and finite");
  if (base < 2) throw std::domain_error("adiabatic_residual: base must be >= 2");
  if (t < 1) throw std::domain_error("adiabatic_residual: t must be >= 1");

  DyadicResidual out;
  double fb = std::floor(f);
  double frac = f - fb;  // exact: Sterbenz for f >= 1, trivial below

  double bt = 1.0;
  bool fits = true;
  __int128 big = 1;
  for (int i = 0; i < t; ++i) {
    bt *= base;
    big *= base;
    if (bt > 0x1.0p70) fits = false;  // keep m * b^t within 128 bits
  }
  out.base_pow_t = bt;

  if (frac == 0.0) {
    out.exact = true;
    return out;  // numer = 0
  }

  int ex = 0;
  double man = std::frexp(frac, &ex);  // frac = man * 2^ex, man in [0.5, 1)
  if (!fits || ex < -60) {
    // Tiny fraction: every digit below the truncation depth, or base^t too
    // large for the integer path. residual = -frac (1 - b^-t) to double
    // precision, which is well inside the bound here.
    out.exact = false;
    out.approx = -frac * (1.0 - 1.0 / bt);
    return out;
  }
  auto m = static_cast<__int128>(man * 0x1.0p53);  // exact integer
  int k = 53 - ex;                                 // frac = m / 2^k, k in [53, 113]
  __int128 num = m * big;
  __int128 q = (k <= 126) ? (num >> k) : 0;
  out.numer = (q << k) - (big - 1) * m;
  out.k = k;
  out.exact = true;
  return out;
}

}  // namespace

double adiabatic_residual(double f, int base, int t) {
  DyadicResidual r = residual_parts(f, base, t);
  if (!r.exact) return r.approx;
  // residual = numer / (b^t * 2^k)
  double n = static_cast<double>(r.numer);
  return n / r.base_pow_t * std::ldexp(1.0, -r.k);
}

bool adiabatic_residual_within_bound(double f, int base, int t) {
  DyadicResidual r = residual_parts(f, base, t);
  if (!r.exact) return std::fabs(r.approx) < 1.0 / r.base_pow_t;
  // |residual| < b^-t  <=>  |numer| < 2^k
  __int128 a = r.numer < 0 ? -r.numer : r.numer;
  if (r.k > 126) return true;
  return a < (static_cast<__int128>(1) << r.k);
}

double sup_limit(double fq, double qp_inv, int base) {
  if (base < 2) throw std::domain_error("sup_limit: base must be >= 2");
  double b = static_cast<double>(base);
  double closed = fq + 0.5 * qp_inv * (1.0 / b) * ((b - 2.0) / (b - 1.0));
  double rec = sup_recursion(fq, qp_inv, base, 60);
  double scale = std::max(1.0, std::fabs(closed));
  if (std::fabs(rec - closed) > 1e-12 * scale)
    throw std::logic_error("sup_limit: recursion failed to converge to the closed form");
  return closed;
}

double sup_recursion(double fq, double qp_inv, int base, int steps) {
  if (base < 2) throw std::domain_error("sup_recursion: base must be >= 2");
  double b = static_cast<double>(base);
  double binv = 1.0 / b;
  double s = fq + 0.5 * qp_inv * binv;
  double p = binv;
  for (int k = 2; k <= steps; ++k) {
    p *= binv;
    s -= 0.5 * qp_inv * p;
  }
  return s;
}

double tunneling_factor(const TunnelingParams& p, bool width_outside) {
  if (!(p.hbar > 0.0) || !(p.mass > 0.0) || !(p.width > 0.0))
    throw std::domain_error("tunneling_factor: hbar, mass, width must be positive");
  if (p.v0 < p.e) throw std::domain_error("tunneling_factor: barrier below state energy");
  double root = std::sqrt(2.0 * p.mass * (p.v0 - p.e));
  if (width_outside) return std::exp(-(2.0 / p.hbar) * root) * p.width;
  return std::exp(-(2.0 / p.hbar) * root * p.width);
}

std::pair<double, double> two_level_eigs(double e1, double e2, double delta) {
  double s = e1 + e2;
  double disc = std::hypot(e1 - e2, delta);
  return {0.5 * (s - disc), 0.5 * (s + disc)};
}

}  // namespace qtzopt
