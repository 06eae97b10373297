#include "qtzopt/gradopt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qtzopt/quantize.hpp"

namespace qtzopt {

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

double norm_inf(const Vec& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::fabs(v));
  return m;
}

Vec axpy(double a, const Vec& x, const Vec& y) {
  Vec r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = a * x[i] + y[i];
  return r;
}

LineSearchResult armijo_wolfe(const Objective& obj, const Vec& x, const Vec& dir,
                              const LineSearchParams& p, bool secant_first) {
  if (!(p.c1 > 0.0 && p.c1 < p.c2 && p.c2 < 1.0))
    throw std::invalid_argument("armijo_wolfe: need 0 < c1 < c2 < 1");
  const double f0 = obj.f(x);
  const double d0 = dot(obj.grad(x), dir);
  LineSearchResult res;
  res.f_evals = 1;
  res.g_evals = 1;
  if (!(d0 < 0.0))
    throw std::invalid_argument("armijo_wolfe: dir is not a descent direction (grad.dir >= 0)");

  double t = 1.0;
  if (secant_first) {
    double d1 = dot(obj.grad(axpy(1.0, dir, x)), dir);
    ++res.g_evals;
    if (d1 > d0) t = -d0 / (d1 - d0);  // exact minimizer when phi is quadratic
  }

  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  for (int it = 0; it < p.max_bracket; ++it) {
    Vec xt = axpy(t, dir, x);
    double ft = obj.f(xt);
    ++res.f_evals;
    if (!(ft <= f0 + p.c1 * t * d0)) {
      hi = t;
      t = 0.5 * (lo + hi);
      continue;
    }
    double dt = dot(obj.grad(xt), dir);
    ++res.g_evals;
    if (dt < p.c2 * d0) {
      lo = t;
      t = std::isinf(hi) ? 2.0 * t : 0.5 * (lo + hi);
      continue;
    }
    res.step = t;
    res.converged = true;
    return res;
  }
  res.step = t;
  res.converged = false;
  return res;
}

GradStepper::GradStepper(GradMethod method, std::size_t dim, LineSearchParams ls)
    : method_(method), n_(dim), ls_(ls) {
  if (method_ == GradMethod::kBfgs) {
    h_.assign(n_ * n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) h_[i * n_ + i] = 1.0;
  }
}

Vec GradStepper::direction(const Vec& g) {
  Vec d(n_);
  switch (method_) {
    case GradMethod::kGd:
      for (std::size_t i = 0; i < n_; ++i) d[i] = -g[i];
      break;
    case GradMethod::kCg: {
      if (!have_prev_) {
        for (std::size_t i = 0; i < n_; ++i) d[i] = -g[i];
      } else {
        double denom = dot(g_prev_, g_prev_);
        double beta = 0.0;
        if (denom > 0.0) {
          double num = 0.0;
          for (std::size_t i = 0; i < n_; ++i) num += g[i] * (g[i] - g_prev_[i]);
          beta = std::max(0.0, num / denom);  // Polak-Ribiere+
        }
        for (std::size_t i = 0; i < n_; ++i) d[i] = -g[i] + beta * d_prev_[i];
        if (dot(d, g) >= 0.0)
          for (std::size_t i = 0; i < n_; ++i) d[i] = -g[i];  // restart
      }
      g_prev_ = g;
      d_prev_ = d;
      have_prev_ = true;
      break;
    }
    case GradMethod::kBfgs: {
      for (std::size_t i = 0; i < n_; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n_; ++j) s += h_[i * n_ + j] * g[j];
        d[i] = -s;
      }
      if (dot(d, g) >= 0.0) {
        h_.assign(n_ * n_, 0.0);
        for (std::size_t i = 0; i < n_; ++i) h_[i * n_ + i] = 1.0;
        for (std::size_t i = 0; i < n_; ++i) d[i] = -g[i];
      }
      break;
    }
  }
  return d;
}

void GradStepper::update(const Vec& s, const Vec& y) {
  if (method_ != GradMethod::kBfgs) return;
  double sy = dot(s, y);
  if (!(sy > 1e-10)) return;  // curvature guard
  double rho = 1.0 / sy;
  // H' = (I - rho s y^T) H (I - rho y s^T) + rho s s^T
  std::vector<double> hy(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n_; ++j) acc += h_[i * n_ + j] * y[j];
    hy[i] = acc;
  }
  double yhy = dot(hy, y);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      h_[i * n_ + j] += -rho * (s[i] * hy[j] + hy[i] * s[j]) +
                        rho * (1.0 + rho * yhy) * s[i] * s[j];
    }
  }
}

double QuantizedStepConfig::qbar() const {
  return qbar_override ? *qbar_override : std::sqrt(qp);
}

Vec quantized_step(const Vec& x, const Vec& h, const QuantizedStepConfig& cfg) {
  const double qb = cfg.qbar();
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    out[i] = x[i] + quantize(cfg.eta * h[i], qb);
  return out;
}

GradOptResult minimize(const Objective& obj, Vec x0, const GradOptOptions& opts) {
  GradOptResult res;
  res.x = std::move(x0);
  GradStepper stepper(opts.method, res.x.size(), opts.ls);
  Vec g = obj.grad(res.x);
  const bool secant = opts.method == GradMethod::kCg;
  for (long it = 0; it < opts.max_iter; ++it) {
    double gn = norm2(g);
    if (gn <= opts.grad_tol) break;
    if (!std::isfinite(gn)) throw std::runtime_error("minimize: non-finite gradient");
    Vec d = stepper.direction(g);
    LineSearchResult ls = armijo_wolfe(obj, res.x, d, opts.ls, secant);
    Vec scaled = axpy(ls.step, d, Vec(res.x.size(), 0.0));
    Vec plain = axpy(1.0, scaled, res.x);
    Vec next = plain;
    double qbar = 0.0;
    if (opts.quantized) {
      int bits = static_cast<int>(std::min<long>(opts.qp0_bits + it, opts.qp_max_bits));
      QuantizedStepConfig qcfg{std::ldexp(1.0, bits), 1.0, std::nullopt};
      qbar = qcfg.qbar();
      next = quantized_step(res.x, scaled, qcfg);
    }
    Vec g_next = obj.grad(next);
    Vec s(res.x.size()), y(res.x.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      s[i] = next[i] - res.x[i];
      y[i] = g_next[i] - g[i];
    }
    stepper.update(s, y);
    if (opts.record_steps)
      res.steps.push_back({ls.step, ls.converged, qbar, std::move(plain), next,
                           obj.f(next), norm2(g_next)});
    res.x = std::move(next);
    g = std::move(g_next);
    res.iters = it + 1;
  }
  res.f = obj.f(res.x);
  res.gnorm = norm2(g);
  res.converged = res.gnorm <= opts.grad_tol;
  return res;
}

double enforcement_decay(long tau, const EnforcementConfig& cfg) {
  // exp(-k z) / (1 + exp(-k z)) rewritten as 1 / (1 + exp(k z)) for stability
  double z = cfg.kappa * static_cast<double>(tau - cfg.tau0);
  if (z > 700.0) return 0.0;
  return 1.0 / (1.0 + std::exp(z));
}

Vec enforcement(long tau, const Vec& h, const EnforcementConfig& cfg, double qp) {
  Vec r(h.size(), 0.0);
  if (!cfg.enabled) return r;
  double hn = norm2(h);
  if (!(hn > 0.0)) return r;
  double scale = cfg.lambda * enforcement_decay(tau, cfg) / hn;
  for (std::size_t i = 0; i < h.size(); ++i) r[i] = quantize(scale * h[i], qp);
  return r;
}

Vec qsgld_step(const Vec& x, const Vec& grad, long tau, const LogLogPowerSchedule& sched,
               double lambda, const EnforcementConfig& ecfg) {
  double qp = sched.qp(tau);
  Vec h(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) h[i] = -grad[i];
  Vec r = enforcement(tau, h, ecfg, qp);
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    out[i] = x[i] + quantize(lambda * h[i] + r[i], qp);
  return out;
}

Vec qsld_adam_step(const Vec& x, const Vec& grad, AdamState& st, long tau,
                   const LogLogPowerSchedule& sched, double lambda,
                   const EnforcementConfig& ecfg) {
  if (st.m.empty()) {
    st.m.assign(x.size(), 0.0);
    st.v.assign(x.size(), 0.0);
  }
  ++st.t;
  Vec h(x.size());
  double bc1 = 1.0 - std::pow(st.beta1, static_cast<double>(st.t));
  double bc2 = 1.0 - std::pow(st.beta2, static_cast<double>(st.t));
  for (std::size_t i = 0; i < x.size(); ++i) {
    st.m[i] = st.beta1 * st.m[i] + (1.0 - st.beta1) * grad[i];
    st.v[i] = st.beta2 * st.v[i] + (1.0 - st.beta2) * grad[i] * grad[i];
    double mhat = st.m[i] / bc1;
    double vhat = st.v[i] / bc2;
    h[i] = -mhat / (std::sqrt(vhat) + st.eps);
  }
  double qp = sched.qp(tau);
  Vec r = enforcement(tau, h, ecfg, qp);
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    out[i] = x[i] + quantize(lambda * h[i] + r[i], qp);
  return out;
}

Vec langevin_step(const Vec& x, const Vec& grad, double eta, double qp, Rng& rng) {
  double sigma = std::sqrt(2.0 * eta / qp);
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    out[i] = x[i] - eta * grad[i] + sigma * rng.gauss();
  return out;
}

}  // namespace qtzopt
