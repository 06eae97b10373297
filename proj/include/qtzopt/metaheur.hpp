#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qtzopt/quantize.hpp"
#include "qtzopt/rng.hpp"
#include "qtzopt/schedule.hpp"

namespace qtzopt {

// A search problem exposes, as a value type P with P::State:
//   State  initial(Rng&) const;
//   State  neighbor(const State&, long level, Rng&) const;
//   double evaluate(const State&) const;
// `level` counts strict improvements of the best accepted objective so far;
// problems with a refinable move scale (continuous boxes) shrink with it,
// combinatorial moves ignore it.

struct TraceRow {
  long tau = 0;
  double f = 0.0;        // objective of this iteration's candidate
  double f_opt = 0.0;    // f^Q_opt (QTZ), f_opt (SA), or H_opt (QIA)
  double qp_or_t = 0.0;  // Qp in force this iteration (QTZ) or T (SA/QIA)
  bool accepted = false;
};

struct RunRecord {
  std::vector<TraceRow> trace;
  double initial_f = 0.0;
  double final_f = 0.0;     // objective at the incumbent when the run ended
  double best_f = 0.0;      // best accepted objective, monotone by construction
  long best_tau = 0;
  long first_hit_tau = -1;  // first tau with accepted f within target_gap, -1 if none
  long iters = 0;
  long evals = 0;
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;
  bool aborted = false;        // non-finite objective encountered
  bool qp_saturated = false;   // QTZ only: advance() hit the representable cap
};

struct RunOptions {
  long max_iter = 10000;
  std::uint64_t seed = 0;
  std::optional<double> target_value;  // known f*; enables the stop gap
  double target_gap = 0x1.0p-12;
  bool record_trace = true;
};

template <class State>
struct RunResult {
  RunRecord record;
  State best_state;
  State final_state;
};

namespace detail {

inline double accept_probability(double delta_abs, double temperature) {
  if (delta_abs == 0.0) return 1.0;
  if (!(temperature > 0.0)) return 0.0;
  return std::exp(-delta_abs / temperature);
}

}  // namespace detail

// Blind random search with quantization: accept when the candidate's
// quantized value ties or beats the stored quantized incumbent, then refine
// the grid by one power of the base.
template <class P>
RunResult<typename P::State> run_qtz(const P& problem, int base, const RunOptions& opts) {
  if (opts.max_iter < 1) throw std::domain_error("run_qtz: max_iter must be >= 1");
  auto t_begin = std::chrono::steady_clock::now();
  Rng rng(opts.seed);
  RunResult<typename P::State> out{{}, problem.initial(rng), {}};
  auto& rec = out.record;
  rec.seed = opts.seed;
  typename P::State incumbent = out.best_state;

  double f0 = problem.evaluate(incumbent);
  rec.evals = 1;
  if (!std::isfinite(f0)) throw std::domain_error("run_qtz: non-finite initial objective");
  rec.initial_f = rec.final_f = rec.best_f = f0;

  QuantizerState qstate(initial_gamma(f0, base), base, 0);
  double fq_opt = quantize(f0, qstate.qp());
  double f_incumbent = f0;
  long level = 0;
  if (opts.record_trace) rec.trace.reserve(static_cast<std::size_t>(opts.max_iter));

  bool hit = opts.target_value && f0 - *opts.target_value <= opts.target_gap;
  if (hit) rec.first_hit_tau = 0;

  for (long tau = 1; tau <= opts.max_iter && !hit; ++tau) {
    rec.iters = tau;
    double qp_now = qstate.qp();
    typename P::State cand = problem.neighbor(incumbent, level, rng);
    double f = problem.evaluate(cand);
    ++rec.evals;
    if (!std::isfinite(f)) {
      rec.aborted = true;
      break;
    }
    double fq = quantize(f, qp_now);
    bool accepted = fq <= fq_opt;
    if (accepted) {
      incumbent = std::move(cand);
      f_incumbent = f;
      fq_opt = fq;
      if (!qstate.advance()) rec.qp_saturated = true;
      if (f < rec.best_f) {
        rec.best_f = f;
        rec.best_tau = tau;
        out.best_state = incumbent;
        ++level;
      }
      if (opts.target_value && f - *opts.target_value <= opts.target_gap) {
        rec.first_hit_tau = tau;
        hit = true;
      }
    }
    if (opts.record_trace) rec.trace.push_back({tau, f, fq_opt, qp_now, accepted});
  }
  rec.final_f = f_incumbent;
  rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_begin).count();
  out.final_state = std::move(incumbent);
  return out;
}

// Simulated annealing with exponential cooling (Metropolis accept on |df|).
template <class P>
RunResult<typename P::State> run_sa(const P& problem, const CoolingSchedule& cooling,
                                    const RunOptions& opts) {
  if (opts.max_iter < 1) throw std::domain_error("run_sa: max_iter must be >= 1");
  auto t_begin = std::chrono::steady_clock::now();
  Rng rng(opts.seed);
  RunResult<typename P::State> out{{}, problem.initial(rng), {}};
  auto& rec = out.record;
  rec.seed = opts.seed;
  typename P::State incumbent = out.best_state;

  double f_opt = problem.evaluate(incumbent);
  rec.evals = 1;
  if (!std::isfinite(f_opt)) throw std::domain_error("run_sa: non-finite initial objective");
  rec.initial_f = rec.final_f = rec.best_f = f_opt;
  long level = 0;
  if (opts.record_trace) rec.trace.reserve(static_cast<std::size_t>(opts.max_iter));

  bool hit = opts.target_value && f_opt - *opts.target_value <= opts.target_gap;
  if (hit) rec.first_hit_tau = 0;

  for (long tau = 1; tau <= opts.max_iter && !hit; ++tau) {
    rec.iters = tau;
    double temp = cooling.temperature(tau);
    typename P::State cand = problem.neighbor(incumbent, level, rng);
    double f = problem.evaluate(cand);
    ++rec.evals;
    if (!std::isfinite(f)) {
      rec.aborted = true;
      break;
    }
    double r = rng.uniform();
    bool accepted =
        f < f_opt || r < detail::accept_probability(std::fabs(f - f_opt), temp);
    if (accepted) {
      incumbent = std::move(cand);
      f_opt = f;
      if (f < rec.best_f) {
        rec.best_f = f;
        rec.best_tau = tau;
        out.best_state = incumbent;
        ++level;
      }
      if (opts.target_value && f - *opts.target_value <= opts.target_gap) {
        rec.first_hit_tau = tau;
        hit = true;
      }
    }
    if (opts.record_trace) rec.trace.push_back({tau, f, f_opt, temp, accepted});
  }
  rec.final_f = f_opt;
  rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_begin).count();
  out.final_state = std::move(incumbent);
  return out;
}

// Quantum-inspired annealing: Metropolis accept on the blended energy
// H = (1-beta) f(candidate) + beta H_B, where H_B re-samples a fresh
// neighbor of the frozen initial state each iteration and beta follows the
// adiabatic schedule down to zero at t_final.
template <class P>
RunResult<typename P::State> run_qia(const P& problem, const CoolingSchedule& cooling,
                                     const AdiabaticSchedule& adiabatic,
                                     const RunOptions& opts) {
  long t_final = adiabatic.t_final;
  if (t_final < 1) throw std::domain_error("run_qia: t_final must be >= 1");
  auto t_begin = std::chrono::steady_clock::now();
  Rng rng(opts.seed);
  RunResult<typename P::State> out{{}, problem.initial(rng), {}};
  auto& rec = out.record;
  rec.seed = opts.seed;
  typename P::State init_state = out.best_state;
  typename P::State incumbent = init_state;

  double f0 = problem.evaluate(incumbent);
  rec.evals = 1;
  if (!std::isfinite(f0)) throw std::domain_error("run_qia: non-finite initial objective");
  rec.initial_f = rec.final_f = rec.best_f = f0;
  double h_opt = problem.evaluate(problem.neighbor(init_state, 0, rng));
  ++rec.evals;
  double f_incumbent = f0;
  long level = 0;
  long iters = std::min(opts.max_iter, t_final);
  if (opts.record_trace) rec.trace.reserve(static_cast<std::size_t>(iters));

  bool hit = opts.target_value && f0 - *opts.target_value <= opts.target_gap;
  if (hit) rec.first_hit_tau = 0;

  for (long tau = 1; tau <= iters && !hit; ++tau) {
    rec.iters = tau;
    double temp = cooling.temperature(tau);
    typename P::State cand = problem.neighbor(incumbent, level, rng);
    double h_p = problem.evaluate(cand);
    double h_b = problem.evaluate(problem.neighbor(init_state, 0, rng));
    rec.evals += 2;
    if (!std::isfinite(h_p) || !std::isfinite(h_b)) {
      rec.aborted = true;
      break;
    }
    double beta = adiabatic.beta(tau);
    double h = (1.0 - beta) * h_p + beta * h_b;
    double r = rng.uniform();
    bool accepted =
        h < h_opt || r < detail::accept_probability(std::fabs(h - h_opt), temp);
    if (accepted) {
      incumbent = std::move(cand);
      h_opt = h;
      f_incumbent = h_p;
      if (h_p < rec.best_f) {
        rec.best_f = h_p;
        rec.best_tau = tau;
        out.best_state = incumbent;
        ++level;
      }
      if (opts.target_value && h_p - *opts.target_value <= opts.target_gap) {
        rec.first_hit_tau = tau;
        hit = true;
      }
    }
    if (opts.record_trace) rec.trace.push_back({tau, h_p, h_opt, temp, accepted});
  }
  rec.final_f = f_incumbent;
  rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_begin).count();
  out.final_state = std::move(incumbent);
  return out;
}

}  // namespace qtzopt
