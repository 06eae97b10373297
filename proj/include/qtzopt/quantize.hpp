#pragma once

#include <cstdint>

namespace qtzopt {

// Round-half-up quantization of f at resolution qp:
//   f^Q = (1/qp) * floor(qp*f + 1/2)
// The grid spacing (quantization step size) is 1/qp.
// Throws std::domain_error for non-finite f or qp <= 0.
double quantize(double f, double qp);

// quantize(f, qp) - f. Lies within [-1/(2qp), +1/(2qp)]; the upper endpoint
// is attained exactly at half-grid points (half rounds up), the lower one is
// open. Mean ~0 and variance ~ 1/(12 qp^2) for diffuse inputs.
double quantization_error(double f, double qp);

// Coarsest scale for a nonnegative initial objective value:
//   gamma = base^(-floor(log_base(f0 + 1)))
// Computed by integer exponent search, so exact powers of the base are not
// subject to floating-point log rounding. Throws std::domain_error if
// f0 < 0 or base < 2.
double initial_gamma(double f0, int base);

// Resolution state Qp = gamma * base^power. Stored in factored form and
// recomputed on demand; repeated advance() never accumulates rounding drift.
class QuantizerState {
 public:
  QuantizerState(double gamma, int base, int power = 0);

  double gamma() const { return gamma_; }
  int base() const { return base_; }
  int power() const { return power_; }

  double qp() const { return qp_; }
  double step() const { return 1.0 / qp_; }

  // Increments the power (multiplies qp by base). Returns false and leaves
  // the state unchanged once qp would exceed the representable range; the
  // caller decides whether saturation is an error.
  bool advance();

 private:
  void recompute();

  double gamma_;
  int base_;
  int power_;
  double qp_;
};

}  // namespace qtzopt
