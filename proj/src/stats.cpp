#include "qtzopt/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace qtzopt {

MeanStddev mean_stddev(const std::vector<double>& xs) {
  if (xs.empty()) throw std::invalid_argument("mean_stddev: empty input");
  MeanStddev out;
  out.n = static_cast<int>(xs.size());
  double s = 0.0;
  for (double v : xs) s += v;
  out.mean = s / static_cast<double>(xs.size());
  if (xs.size() == 1) {
    out.single = true;
    out.stddev = 0.0;
    return out;
  }
  double ss = 0.0;
  for (double v : xs) {
    double d = v - out.mean;
    ss += d * d;
  }
  out.stddev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  return out;
}

double improvement_ratio(double baseline, double value) {
  return (baseline - value) / baseline * 100.0;
}

}  // namespace qtzopt
