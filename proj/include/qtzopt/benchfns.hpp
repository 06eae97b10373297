#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qtzopt {

using Vec = std::vector<double>;

// Continuous benchmark function with its domain box and (when known) global
// optimum. Formulas follow the experiment tables verbatim, including the
// nonstandard EggHolder offset form and the Griewank-shaped "whitley";
// see README for the differences against the folklore definitions.
struct BenchmarkFn {
  std::string name;
  int dim = 2;
  std::vector<std::pair<double, double>> domain;  // per-component [min, max]
  std::function<double(const Vec&)> evaluate;
  std::function<Vec(const Vec&)> gradient;  // analytic; empty -> use finite_diff_gradient
  std::optional<Vec> optimum_point;
  std::optional<double> optimum_value;

  bool in_domain(const Vec& x) const;

  // evaluate with the dimension precondition enforced
  double eval_checked(const Vec& x) const;
};

// Central differences with h = 1e-6 * max(1, |x_i|) per component.
Vec finite_diff_gradient(const std::function<double(const Vec&)>& f, const Vec& x);

const std::vector<BenchmarkFn>& benchmark_registry();
const BenchmarkFn& find_benchmark(const std::string& name);

// Registry entry re-dimensioned to `dim` for the dimension-generic formulas
// (ackley, whitley, rosenbrock*, xin_she_yang_n4, salomon, drop_wave,
// powell_d4). Throws for the fixed two-dimensional functions.
BenchmarkFn benchmark_with_dim(const std::string& name, int dim);

// Parabolic washboard potential 0.125 x^2 + 2 sin(alpha x) + 2.
double washboard(double alpha, double x);
double washboard_envelope(double x);  // the 0.125 x^2 backbone

// Global minimizer over [-20, 20]: dense grid (step 1e-4) followed by
// bisection on the derivative. This is the reference value used for
// improvement ratios and stop gaps.
std::pair<double, double> washboard_min(double alpha);

}  // namespace qtzopt
