#pragma once

#include <stdexcept>

namespace qtzopt {

// Exponential cooling T(tau) = t0 * alpha^tau.
struct CoolingSchedule {
  double t0 = 1000.0;
  double alpha = 0.9995;

  double temperature(long tau) const;
};

// Adiabatic mixing weight beta(tau) = 1 - sqrt(tau / t_final),
// defined for tau in [0, t_final].
struct AdiabaticSchedule {
  long t_final = 10000;

  double beta(long tau) const;
};

// Resolution schedule for the quantized learning rules:
//   qp(tau) = eta * base^floor(log_base(log(tau + 2)))
// The inner log is natural; both the scale and the base are configurable.
struct LogLogPowerSchedule {
  double eta = 1.0;
  int base = 2;
  long batches_per_epoch = 1;

  long power(long tau) const;
  double qp(long tau) const;
};

}  // namespace qtzopt
