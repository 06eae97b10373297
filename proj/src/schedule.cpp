#include "qtzopt/schedule.hpp"

#include <cmath>

namespace qtzopt {

double CoolingSchedule::temperature(long tau) const {
  return t0 * std::pow(alpha, static_cast<double>(tau));
}

double AdiabaticSchedule::beta(long tau) const {
  if (tau < 0 || tau > t_final)
    throw std::domain_error("AdiabaticSchedule::beta: tau outside [0, t_final]");
  return 1.0 - std::sqrt(static_cast<double>(tau) / static_cast<double>(t_final));
}

long LogLogPowerSchedule::power(long tau) const {
  double inner = std::log(static_cast<double>(tau) + 2.0);
  return static_cast<long>(std::floor(std::log(inner) / std::log(static_cast<double>(base))));
}

double LogLogPowerSchedule::qp(long tau) const {
  long p = power(tau);
  double r = 1.0;
  double b = static_cast<double>(base);
  if (base == 2) {
    r = std::ldexp(1.0, static_cast<int>(p));
  } else {
    double m = (p < 0) ? 1.0 / b : b;
    for (long k = (p < 0) ? -p : p; k > 0; k >>= 1) {
      if (k & 1) r *= m;
      m *= m;
    }
  }
  return eta * r;
}

}  // namespace qtzopt
