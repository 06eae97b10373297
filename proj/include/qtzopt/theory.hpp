#pragma once

#include <utility>

namespace qtzopt {

// Signed difference between the base-b truncation of f to t fractional
// digits and the convex blend (1 - b^-t) f + b^-t floor(f). Computed in
// exact integer arithmetic on the input's dyadic representation whenever
// b^t * 2^52 fits in 128 bits, so the |residual| < b^-t bound can be
// checked without double rounding. Requires f >= 0, b >= 2, t >= 1.
double adiabatic_residual(double f, int base, int t);

// Exact check of |adiabatic_residual| < base^-t for the same inputs.
bool adiabatic_residual_within_bound(double f, int base, int t);

// Closed-form limit of the tie-band supremum recursion:
//   fq + (1/2) qp_inv (1/b) ((b-2)/(b-1))
// For b = 2 this collapses to fq exactly.
double sup_limit(double fq, double qp_inv, int base);

// The recursion itself: s1 = fq + qp_inv/(2b), s_k = s_{k-1} - qp_inv b^-k / 2.
// Returns the value after `steps` decrements (monotone decreasing in k).
double sup_recursion(double fq, double qp_inv, int base, int steps);

struct TunnelingParams {
  double hbar = 1.0;
  double mass = 1.0;
  double v0 = 0.0;     // barrier height
  double e = 0.0;      // state energy
  double width = 1.0;  // barrier width D
};

// WKB transmission factor exp(-(2/hbar) sqrt(2 m (v0 - e)) D); the width
// sits inside the exponent. The variant with the width as an outer factor
// (exp(...) * D) is available behind the flag for comparison.
double tunneling_factor(const TunnelingParams& p, bool width_outside = false);

// Eigenvalues (low, high) of [[e1, delta/2], [delta/2, e2]].
std::pair<double, double> two_level_eigs(double e1, double e2, double delta);

}  // namespace qtzopt
