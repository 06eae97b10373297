#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "qtzopt/benchfns.hpp"
#include "qtzopt/rng.hpp"
#include "qtzopt/schedule.hpp"

namespace qtzopt {

double dot(const Vec& a, const Vec& b);
double norm2(const Vec& a);
double norm_inf(const Vec& a);
Vec axpy(double a, const Vec& x, const Vec& y);  // a*x + y

struct Objective {
  std::function<double(const Vec&)> f;
  std::function<Vec(const Vec&)> grad;
};

struct LineSearchParams {
  double c1 = 1e-4;
  double c2 = 0.9;
  int max_bracket = 60;
};

struct LineSearchResult {
  double step = 0.0;
  bool converged = false;  // false: max_bracket fallback, flagged to the caller
  int f_evals = 0;
  int g_evals = 0;
};

// Weak Wolfe line search by bracketing bisection. Throws std::invalid_argument
// when dir is not a descent direction. With secant_first the first trial is
// the one-dimensional secant minimizer probed at t=1, which is exact on
// quadratics (keeps CG's finite-termination property).
LineSearchResult armijo_wolfe(const Objective& obj, const Vec& x, const Vec& dir,
                              const LineSearchParams& p, bool secant_first = false);

enum class GradMethod { kGd, kCg, kBfgs };

// Per-method direction state: PR+ restarts for CG, damped inverse-Hessian
// updates for BFGS (curvature guard s.y > 1e-10).
class GradStepper {
 public:
  GradStepper(GradMethod method, std::size_t dim, LineSearchParams ls);

  GradMethod method() const { return method_; }
  const LineSearchParams& ls_params() const { return ls_; }

  Vec direction(const Vec& g);
  void update(const Vec& s, const Vec& y);

  const std::vector<double>& inv_hessian() const { return h_; }  // BFGS only

 private:
  GradMethod method_;
  std::size_t n_;
  LineSearchParams ls_;
  std::vector<double> h_;  // row-major inverse Hessian approximation
  Vec g_prev_, d_prev_;
  bool have_prev_ = false;
};

// Quantized difference step (resolution qbar, defaulting to sqrt(qp)):
//   x' = x + (1/qbar) floor(qbar * eta * h + 1/2)   componentwise
struct QuantizedStepConfig {
  double qp = 1.0;
  double eta = 1.0;
  std::optional<double> qbar_override;

  double qbar() const;
};

Vec quantized_step(const Vec& x, const Vec& h, const QuantizedStepConfig& cfg);

struct GradOptOptions {
  GradMethod method = GradMethod::kBfgs;
  long max_iter = 1000;
  double grad_tol = 1e-8;
  LineSearchParams ls;
  bool quantized = false;
  int qp0_bits = 5;    // quantized mode: qp = 2^min(qp0_bits + iter, qp_max_bits)
  int qp_max_bits = 17;
  bool record_steps = false;
};

struct GradStepInfo {
  double alpha = 0.0;
  bool ls_converged = false;
  double qbar = 0.0;  // 0 when not quantized
  Vec plain_next;     // x + alpha*d, the un-quantized twin of this step
  Vec actual_next;
  double f = 0.0;
  double gnorm = 0.0;
};

struct GradOptResult {
  Vec x;
  double f = 0.0;
  double gnorm = 0.0;
  long iters = 0;
  bool converged = false;
  std::vector<GradStepInfo> steps;
};

GradOptResult minimize(const Objective& obj, Vec x0, const GradOptOptions& opts);

// Decaying, normalized, quantized perturbation r(tau) used by the quantized
// learning rules. Zero direction yields a zero vector.
struct EnforcementConfig {
  double lambda = 0.01;
  double kappa = 0.01;
  long tau0 = 0;
  bool enabled = true;
};

double enforcement_decay(long tau, const EnforcementConfig& cfg);
Vec enforcement(long tau, const Vec& h, const EnforcementConfig& cfg, double qp);

// One step of the quantized stochastic learning rules at resolution
// qp = schedule.qp(tau):  x' = x + (1/qp) floor(qp*(lambda*h + r) + 1/2).
// QSGLD uses h = -grad; the Adam variant uses h = -m^/(sqrt(v^)+eps).
Vec qsgld_step(const Vec& x, const Vec& grad, long tau, const LogLogPowerSchedule& sched,
               double lambda, const EnforcementConfig& ecfg);

struct AdamState {
  Vec m, v;
  long t = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

Vec qsld_adam_step(const Vec& x, const Vec& grad, AdamState& state, long tau,
                   const LogLogPowerSchedule& sched, double lambda,
                   const EnforcementConfig& ecfg);

// Overdamped Langevin update x - eta*grad + sqrt(2 eta / qp) * xi.
Vec langevin_step(const Vec& x, const Vec& grad, double eta, double qp, Rng& rng);

}  // namespace qtzopt
