#include "qtzopt/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "qtzopt/benchfns.hpp"
#include "qtzopt/problems.hpp"
#include "qtzopt/theory.hpp"
#include "qtzopt/tsp.hpp"

namespace qtzopt {

namespace {

using json = nlohmann::json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct AlgoRuns {
  std::string algo;
  std::vector<RunRecord> records;
};

TrialStats aggregate(const std::string& algo, const std::vector<RunRecord>& recs,
                     const std::function<double(const RunRecord&)>& trial_baseline) {
  TrialStats ts;
  ts.algorithm = algo;
  ts.n_trials = static_cast<int>(recs.size());
  std::vector<double> finals, bests, ratios, evals;
  double hit_sum = 0.0;
  for (const auto& r : recs) {
    finals.push_back(r.final_f);
    bests.push_back(r.best_f);
    evals.push_back(static_cast<double>(r.evals));
    double base = trial_baseline(r);
    ratios.push_back(improvement_ratio(base, r.final_f));
    if (r.first_hit_tau >= 0) {
      ++ts.hits;
      hit_sum += static_cast<double>(r.first_hit_tau);
    }
  }
  MeanStddev ms = mean_stddev(finals);
  ts.mean = ms.mean;
  ts.sample_stddev = ms.stddev;
  ts.single_trial = ms.single;
  ts.mean_best = mean_stddev(bests).mean;
  ts.mean_ratio = mean_stddev(ratios).mean;
  ts.mean_evals = mean_stddev(evals).mean;
  ts.mean_first_hit = ts.hits > 0 ? hit_sum / static_cast<double>(ts.hits) : -1.0;
  return ts;
}

struct MetaheurParams {
  std::vector<std::string> algos;
  std::vector<std::uint64_t> seeds;
  long budget = 10000;
  int base = 2;
  CoolingSchedule sa_cooling;
  CoolingSchedule qia_cooling;
  long qia_t_final = 0;  // 0 -> budget
  bool trace = false;
  std::optional<double> target;
  double target_gap = 0x1.0p-12;
};

MetaheurParams read_metaheur_params(Config& cfg, long default_budget, double default_t0,
                                    double default_alpha = 0.9995) {
  MetaheurParams p;
  long trials = cfg.get_long("trials", 10);
  if (trials < 1) throw std::runtime_error("config key 'trials': must be >= 1");
  p.seeds = cfg.get_seeds("seeds", trials);
  p.budget = cfg.get_long("budget", default_budget);
  if (p.budget < 1) throw std::runtime_error("config key 'budget': must be >= 1");
  p.base = static_cast<int>(cfg.get_long("base", 2));
  p.algos = cfg.get_list("algos", {"qtz", "sa", "qia"});
  p.sa_cooling.t0 = cfg.get_double("sa.t0", default_t0);
  p.sa_cooling.alpha = cfg.get_double("sa.alpha", default_alpha);
  p.qia_cooling.t0 = cfg.get_double("qia.t0", p.sa_cooling.t0);
  p.qia_cooling.alpha = cfg.get_double("qia.alpha", p.sa_cooling.alpha);
  p.qia_t_final = cfg.get_long("qia.t_final", 0);
  p.trace = cfg.get_bool("trace", false);
  return p;
}

// Runs one algorithm across all seeds in parallel; results in seed order.
template <class ProblemFactory>
AlgoRuns run_algo(const std::string& algo, const MetaheurParams& p,
                  const ProblemFactory& make_problem) {
  AlgoRuns out;
  out.algo = algo;
  out.records.resize(p.seeds.size());
  parallel_for(p.seeds.size(), [&](std::size_t i) {
    RunOptions opts;
    opts.max_iter = p.budget;
    opts.seed = p.seeds[i];
    opts.target_value = p.target;
    opts.target_gap = p.target_gap;
    opts.record_trace = p.trace;
    auto problem = make_problem();
    if (algo == "qtz") {
      out.records[i] = run_qtz(problem, p.base, opts).record;
    } else if (algo == "sa") {
      out.records[i] = run_sa(problem, p.sa_cooling, opts).record;
    } else if (algo == "qia") {
      AdiabaticSchedule ad{p.qia_t_final > 0 ? p.qia_t_final : p.budget};
      out.records[i] = run_qia(problem, p.qia_cooling, ad, opts).record;
    } else {
      throw std::runtime_error("unknown algorithm: " + algo);
    }
  });
  return out;
}

}  // namespace

int worker_count(std::size_t n) {
  unsigned hw = std::thread::hardware_concurrency();
  long cap = hw ? hw : 1;
  if (const char* env = std::getenv("QTZOPT_THREADS")) {
    long v = std::atol(env);
    if (v > 0) cap = v;
  }
  if (cap > static_cast<long>(n)) cap = static_cast<long>(n);
  return static_cast<int>(cap < 1 ? 1 : cap);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  int workers = worker_count(n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

ExperimentResult run_tsp_experiment(Config& cfg) {
  auto t_start = std::chrono::steady_clock::now();
  ExperimentResult res;
  res.kind = "tsp";

  long cities = cfg.get_long("tsp.cities", 100);
  double side = cfg.get_double("tsp.side", 670.0);
  std::uint64_t inst_seed = static_cast<std::uint64_t>(cfg.get_long("tsp.instance_seed", 8));
  int start = static_cast<int>(cfg.get_long("tsp.start", 0));
  std::string move_name = cfg.get_str("tsp.move", "reverse");
  std::string inst_file = cfg.get_str("tsp.instance_file", "");
  std::string save_file = cfg.get_str("tsp.save_instance", "");
  TspMove move;
  if (move_name == "reverse")
    move = TspMove::kReverse;
  else if (move_name == "swap")
    move = TspMove::kSwap;
  else
    throw std::runtime_error("tsp.move must be 'reverse' or 'swap', got: " + move_name);

  MetaheurParams p = read_metaheur_params(cfg, 30000, 1000.0);
  cfg.reject_unknown();

  TspInstance inst = inst_file.empty()
                         ? generate_instance(static_cast<std::size_t>(cities), side, inst_seed)
                         : load_instance_csv(inst_file);
  if (!save_file.empty()) save_instance_csv(inst, save_file);
  double nn_cost = nearest_neighbor(inst, start).cost;
  res.label = std::to_string(inst.size()) + "cities";
  res.baselines["nn"] = nn_cost;

  for (const auto& algo : p.algos) {
    AlgoRuns runs = run_algo(algo, p, [&] {
      return TspSearchProblem{&inst, start, move};
    });
    res.stats.push_back(
        aggregate(algo, runs.records, [&](const RunRecord&) { return nn_cost; }));
    res.stats.back().ratios["vs_nn"] = improvement_ratio(nn_cost, res.stats.back().mean);
    res.records[algo] = std::move(runs.records);
  }
  // Pairwise mean ratios in the style of the TSP results table.
  for (const auto& a : res.stats)
    for (const auto& b : res.stats)
      if (a.algorithm != b.algorithm)
        res.cross_ratios[a.algorithm + "_vs_" + b.algorithm] =
            improvement_ratio(b.mean, a.mean);
  res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return res;
}

ExperimentResult run_washboard_experiment(Config& cfg) {
  auto t_start = std::chrono::steady_clock::now();
  ExperimentResult res;
  res.kind = "washboard";

  double alpha = cfg.get_double("washboard.alpha", 3.0);
  double shrink = cfg.get_double("bench.shrink", 0.67);
  long trials_def = 100;
  if (!cfg.has("trials")) cfg.set("trials", std::to_string(trials_def));
  MetaheurParams p = read_metaheur_params(cfg, 100000, 4.5, 0.999);
  bool stop_enabled = cfg.get_bool("stop.enabled", true);
  double stop_gap = cfg.get_double("stop.gap", 0x1.0p-12);
  cfg.reject_unknown();

  auto [xstar, fstar] = washboard_min(alpha);
  if (stop_enabled) {
    p.target = fstar;
    p.target_gap = stop_gap;
  }
  res.label = "alpha=" + fmt(alpha);
  res.baselines["f_star"] = fstar;
  res.baselines["x_star"] = xstar;

  for (const auto& algo : p.algos) {
    AlgoRuns runs = run_algo(algo, p, [&] { return make_washboard_problem(alpha, shrink); });
    res.stats.push_back(aggregate(algo, runs.records,
                                  [](const RunRecord& r) { return r.initial_f; }));
    res.stats.back().ratios["vs_initial"] = res.stats.back().mean_ratio;
    res.records[algo] = std::move(runs.records);
  }
  for (const auto& a : res.stats)
    for (const auto& b : res.stats)
      if (a.algorithm != b.algorithm)
        res.cross_ratios[a.algorithm + "_minus_" + b.algorithm] =
            a.mean_ratio - b.mean_ratio;
  res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return res;
}

ExperimentResult run_bench_experiment(Config& cfg) {
  auto t_start = std::chrono::steady_clock::now();
  ExperimentResult res;
  res.kind = "bench";

  std::string fname = cfg.get_str("bench.function", "drop_wave");
  double shrink = cfg.get_double("bench.shrink", 0.67);
  long dim_override = cfg.get_long("bench.dim", 0);
  MetaheurParams p = read_metaheur_params(cfg, 10000, 2.0, 0.999);
  bool stop_enabled = cfg.get_bool("stop.enabled", true);
  double stop_gap = cfg.get_double("stop.gap", 0x1.0p-12);
  cfg.reject_unknown();

  const BenchmarkFn fn = dim_override > 0
                             ? benchmark_with_dim(fname, static_cast<int>(dim_override))
                             : find_benchmark(fname);
  if (stop_enabled && fn.optimum_value) {
    p.target = *fn.optimum_value;
    p.target_gap = stop_gap;
  }
  res.label = fname;
  if (fn.optimum_value) res.baselines["f_star"] = *fn.optimum_value;

  for (const auto& algo : p.algos) {
    AlgoRuns runs = run_algo(algo, p, [&] { return make_benchmark_problem(fn, shrink); });
    res.stats.push_back(aggregate(algo, runs.records,
                                  [](const RunRecord& r) { return r.initial_f; }));
    res.stats.back().ratios["vs_initial"] = res.stats.back().mean_ratio;
    res.records[algo] = std::move(runs.records);
  }
  res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return res;
}

ExperimentResult run_gradopt_experiment(Config& cfg) {
  auto t_start = std::chrono::steady_clock::now();
  ExperimentResult res;
  res.kind = "gradopt";

  std::string fname = cfg.get_str("gradopt.function", "rosenbrock2d");
  std::vector<std::string> methods = cfg.get_list("gradopt.methods", {"gd", "cg", "bfgs"});
  std::vector<std::string> variants = cfg.get_list("gradopt.variants", {"plain", "quantized"});
  long trials = cfg.get_long("trials", 20);
  auto seeds = cfg.get_seeds("seeds", trials);
  long max_iter = cfg.get_long("gradopt.max_iter", 2000);
  double grad_tol = cfg.get_double("gradopt.grad_tol", 1e-8);
  double c1 = cfg.get_double("ls.c1", 1e-4);
  double c2_default = cfg.get_double("ls.c2", 0.9);
  double c2_cg = cfg.get_double("ls.c2_cg", 0.1);
  int qp0_bits = static_cast<int>(cfg.get_long("gradopt.qp0_bits", 5));
  int qp_max_bits = static_cast<int>(cfg.get_long("gradopt.qp_max_bits", 17));
  double succ_radius = cfg.get_double("gradopt.success_radius", 1e-2);
  double succ_gap = cfg.get_double("stop.gap", 0x1.0p-12);
  cfg.reject_unknown();

  const BenchmarkFn& fn = find_benchmark(fname);
  Objective obj{fn.evaluate, fn.gradient};
  res.label = fname;
  if (fn.optimum_value) res.baselines["f_star"] = *fn.optimum_value;

  for (const auto& mname : methods) {
    GradMethod method;
    if (mname == "gd")
      method = GradMethod::kGd;
    else if (mname == "cg")
      method = GradMethod::kCg;
    else if (mname == "bfgs")
      method = GradMethod::kBfgs;
    else
      throw std::runtime_error("gradopt.methods: unknown method " + mname);
    for (const auto& variant : variants) {
      bool quantized = variant == "quantized";
      if (!quantized && variant != "plain")
        throw std::runtime_error("gradopt.variants must be plain/quantized, got " + variant);
      std::vector<RunRecord> recs(seeds.size());
      std::vector<Vec> final_points(seeds.size());
      parallel_for(seeds.size(), [&, method, quantized](std::size_t i) {
        Rng rng(seeds[i]);
        Vec x0(static_cast<std::size_t>(fn.dim));
        for (std::size_t k = 0; k < x0.size(); ++k)
          x0[k] = rng.uniform(fn.domain[k].first, fn.domain[k].second);
        GradOptOptions opts;
        opts.method = method;
        opts.max_iter = max_iter;
        opts.grad_tol = grad_tol;
        opts.ls = LineSearchParams{c1, method == GradMethod::kCg ? c2_cg : c2_default, 60};
        opts.quantized = quantized;
        opts.qp0_bits = qp0_bits;
        opts.qp_max_bits = qp_max_bits;
        GradOptResult r = minimize(obj, x0, opts);
        RunRecord rec;
        rec.seed = seeds[i];
        rec.initial_f = fn.evaluate(x0);
        rec.final_f = r.f;
        rec.best_f = r.f;
        rec.iters = r.iters;
        rec.evals = r.iters;
        recs[i] = rec;
        final_points[i] = std::move(r.x);
      });
      TrialStats ts =
          aggregate(mname + (quantized ? "_qtz" : ""), recs,
                    [](const RunRecord& r) { return r.initial_f; });
      // Success: final point within the radius of the known optimum, or
      // objective within the stop gap of the known optimum value.
      long successes = 0;
      for (std::size_t i = 0; i < seeds.size(); ++i) {
        bool ok = false;
        if (fn.optimum_point) {
          double dev = 0.0;
          for (std::size_t k = 0; k < final_points[i].size(); ++k)
            dev = std::max(dev, std::fabs(final_points[i][k] - (*fn.optimum_point)[k]));
          ok = dev <= succ_radius;
        }
        if (!ok && fn.optimum_value) ok = recs[i].final_f - *fn.optimum_value <= succ_gap;
        if (ok) ++successes;
      }
      ts.ratios["success_pct"] =
          100.0 * static_cast<double>(successes) / static_cast<double>(seeds.size());
      res.stats.push_back(std::move(ts));
      res.records[mname + (quantized ? "_qtz" : "")] = std::move(recs);
    }
  }
  res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return res;
}

ExperimentResult run_mltoy_experiment(Config& cfg) {
  auto t_start = std::chrono::steady_clock::now();
  ExperimentResult res;
  res.kind = "mltoy";

  long dim = cfg.get_long("ml.dim", 20);
  double cond = cfg.get_double("ml.cond", 100.0);
  long steps = cfg.get_long("ml.steps", 5000);
  double lambda = cfg.get_double("ml.lambda", 0.01);
  double eta = cfg.get_double("ml.eta", 524288.0);  // 2^19
  int base = static_cast<int>(cfg.get_long("ml.base", 2));
  double loss_target = cfg.get_double("ml.loss_target", 1e-3);
  long trials = cfg.get_long("trials", 5);
  auto seeds = cfg.get_seeds("seeds", trials);
  auto optimizers = cfg.get_list("ml.optimizers", {"qsgld", "sgd", "qsld", "adam"});
  EnforcementConfig ecfg;
  ecfg.lambda = cfg.get_double("enf.lambda", lambda);
  ecfg.kappa = cfg.get_double("enf.kappa", 0.01);
  ecfg.tau0 = cfg.get_long("enf.tau0", 0);
  ecfg.enabled = cfg.get_bool("enf.enabled", true);
  cfg.reject_unknown();

  res.label = "least_squares_d" + std::to_string(dim);
  LogLogPowerSchedule sched{eta, base, 1};

  for (const auto& optname : optimizers) {
    std::vector<RunRecord> recs(seeds.size());
    parallel_for(seeds.size(), [&](std::size_t i) {
      auto n = static_cast<std::size_t>(dim);
      Rng rng(seeds[i] * 7919 + 17);
      // A = G1 * diag(s) * G2 with random Givens rotations; cond(A^T A) = cond.
      std::vector<double> a(n * n, 0.0);
      double smax = std::sqrt(cond);
      for (std::size_t k = 0; k < n; ++k)
        a[k * n + k] = 1.0 + (smax - 1.0) * static_cast<double>(k) / static_cast<double>(n - 1);
      for (int rot = 0; rot < 300; ++rot) {
        auto [p, q] = rng.distinct_pair(n);
        double th = rng.uniform(0.0, 6.283185307179586);
        double c = std::cos(th), s = std::sin(th);
        bool rows = rot % 2 == 0;
        for (std::size_t k = 0; k < n; ++k) {
          double& u = rows ? a[p * n + k] : a[k * n + p];
          double& v = rows ? a[q * n + k] : a[k * n + q];
          double nu = c * u - s * v;
          double nv = s * u + c * v;
          u = nu;
          v = nv;
        }
      }
      Vec xstar(n);
      for (auto& v : xstar) v = rng.uniform(-1.0, 1.0);
      auto apply_a = [&](const Vec& x) {
        Vec y(n, 0.0);
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t k = 0; k < n; ++k) y[r] += a[r * n + k] * (x[k] - xstar[k]);
        return y;
      };
      auto loss = [&](const Vec& x) {
        Vec y = apply_a(x);
        return 0.5 * dot(y, y);
      };
      auto grad = [&](const Vec& x) {
        Vec y = apply_a(x);
        Vec g(n, 0.0);
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t k = 0; k < n; ++k) g[k] += a[r * n + k] * y[r];
        return g;
      };

      Vec x(n, 0.0);
      AdamState adam;
      RunRecord rec;
      rec.seed = seeds[i];
      rec.initial_f = loss(x);
      rec.best_f = rec.initial_f;
      for (long tau = 0; tau < steps; ++tau) {
        Vec g = grad(x);
        if (optname == "qsgld") {
          x = qsgld_step(x, g, tau, sched, lambda, ecfg);
        } else if (optname == "sgd") {
          x = axpy(-lambda, g, x);
        } else if (optname == "qsld") {
          x = qsld_adam_step(x, g, adam, tau, sched, lambda, ecfg);
        } else if (optname == "adam") {
          ++adam.t;
          if (adam.m.empty()) {
            adam.m.assign(n, 0.0);
            adam.v.assign(n, 0.0);
          }
          double bc1 = 1.0 - std::pow(adam.beta1, static_cast<double>(adam.t));
          double bc2 = 1.0 - std::pow(adam.beta2, static_cast<double>(adam.t));
          for (std::size_t k = 0; k < n; ++k) {
            adam.m[k] = adam.beta1 * adam.m[k] + (1.0 - adam.beta1) * g[k];
            adam.v[k] = adam.beta2 * adam.v[k] + (1.0 - adam.beta2) * g[k] * g[k];
            x[k] -= lambda * (adam.m[k] / bc1) / (std::sqrt(adam.v[k] / bc2) + adam.eps);
          }
        } else {
          throw std::runtime_error("ml.optimizers: unknown optimizer " + optname);
        }
        double l = loss(x);
        rec.evals = tau + 1;
        rec.iters = tau + 1;
        if (l < rec.best_f) rec.best_f = l;
        if (rec.first_hit_tau < 0 && l < loss_target) rec.first_hit_tau = tau + 1;
        rec.final_f = l;
      }
      recs[i] = rec;
    });
    res.stats.push_back(
        aggregate(optname, recs, [](const RunRecord& r) { return r.initial_f; }));
    res.records[optname] = std::move(recs);
  }
  res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return res;
}

std::string theory_report() {
  std::ostringstream os;
  os << "diagnostic,inputs,value,bound_or_reference\n";
  {
    double r = adiabatic_residual(5.8125, 2, 2);
    os << "adiabatic_residual,f=5.8125 b=2 t=2," << fmt(r) << ",|r|<" << fmt(0.25) << "\n";
    os << "adiabatic_residual,f=7.3 b=3 t=4," << fmt(adiabatic_residual(7.3, 3, 4)) << ",|r|<"
       << fmt(std::pow(3.0, -4)) << "\n";
  }
  os << "sup_limit,b=2 fq=1 qpinv=0.5," << fmt(sup_limit(1.0, 0.5, 2)) << ",collapses to fq\n";
  os << "sup_limit,b=3 fq=1 qpinv=0.3," << fmt(sup_limit(1.0, 0.3, 3)) << ",closed form\n";
  {
    TunnelingParams tp{1.0, 0.5, 1.0, 0.0, 1.0};
    os << "tunneling_factor,hbar=1 m=0.5 v0-e=1 D=1," << fmt(tunneling_factor(tp))
       << ",exp(-2)\n";
    TunnelingParams flat{1.0, 1.0, 2.0, 2.0, 3.0};
    os << "tunneling_factor,v0=e," << fmt(tunneling_factor(flat)) << ",=1\n";
  }
  {
    auto [lo, hi] = two_level_eigs(0.0, 0.0, 2.0);
    os << "two_level_eigs,e1=e2=0 delta=2," << fmt(lo) << ";" << fmt(hi) << ",+-delta/2\n";
  }
  return os.str();
}

std::string summary_csv(const ExperimentResult& r) {
  std::ostringstream os;
  os << "experiment,label,algorithm,n_trials,mean,stddev,single_trial,mean_best,"
        "improvement_ratio_pct,hits,mean_first_hit,mean_evals";
  // stable extra-ratio columns: union of keys in declaration order
  std::vector<std::string> extra;
  for (const auto& s : r.stats)
    for (const auto& [k, v] : s.ratios)
      if (std::find(extra.begin(), extra.end(), k) == extra.end()) extra.push_back(k);
  for (const auto& k : extra) os << ",ratio_" << k;
  os << "\n";
  for (const auto& s : r.stats) {
    os << r.kind << ',' << r.label << ',' << s.algorithm << ',' << s.n_trials << ','
       << fmt(s.mean) << ',' << fmt(s.sample_stddev) << ',' << (s.single_trial ? 1 : 0) << ','
       << fmt(s.mean_best) << ',' << fmt(s.mean_ratio) << ',' << s.hits << ','
       << fmt(s.mean_first_hit) << ',' << fmt(s.mean_evals);
    for (const auto& k : extra) {
      auto it = s.ratios.find(k);
      os << ',' << (it == s.ratios.end() ? "" : fmt(it->second));
    }
    os << "\n";
  }
  return os.str();
}

std::string summary_json(const ExperimentResult& r) {
  json j;
  j["experiment"] = r.kind;
  j["label"] = r.label;
  j["wall_seconds"] = r.wall_seconds;
  j["baselines"] = r.baselines;
  j["cross_ratios"] = r.cross_ratios;
  j["algorithms"] = json::array();
  for (const auto& s : r.stats) {
    json a;
    a["algorithm"] = s.algorithm;
    a["n_trials"] = s.n_trials;
    a["mean"] = s.mean;
    a["sample_stddev"] = s.sample_stddev;
    a["single_trial"] = s.single_trial;
    a["mean_best"] = s.mean_best;
    a["improvement_ratio_pct"] = s.mean_ratio;
    a["hits"] = s.hits;
    a["mean_first_hit"] = s.mean_first_hit;
    a["mean_evals"] = s.mean_evals;
    a["ratios"] = s.ratios;
    j["algorithms"].push_back(a);
  }
  return j.dump(2) + "\n";
}

void write_outputs(const ExperimentResult& r, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  auto open_or_throw = [](const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write output file: " + path);
    return f;
  };
  {
    auto f = open_or_throw(out_dir + "/summary.csv");
    f << summary_csv(r);
  }
  {
    auto f = open_or_throw(out_dir + "/summary.json");
    f << summary_json(r);
  }
  for (const auto& [algo, recs] : r.records) {
    for (const auto& rec : recs) {
      if (rec.trace.empty()) continue;
      auto f = open_or_throw(out_dir + "/trace_" + algo + "_" + std::to_string(rec.seed) + ".csv");
      f << "tau,f,f_opt,qp_or_T,accepted\n";
      for (const auto& row : rec.trace)
        f << row.tau << ',' << fmt(row.f) << ',' << fmt(row.f_opt) << ','
          << fmt(row.qp_or_t) << ',' << (row.accepted ? 1 : 0) << "\n";
    }
  }
}

ExperimentResult run_experiment(Config& cfg) {
  std::string kind = cfg.get_str("experiment", "");
  if (kind.empty()) throw std::runtime_error("config key 'experiment' is required");
  std::string out_dir = cfg.get_str("out", "");
  ExperimentResult res;
  if (kind == "tsp")
    res = run_tsp_experiment(cfg);
  else if (kind == "washboard")
    res = run_washboard_experiment(cfg);
  else if (kind == "bench")
    res = run_bench_experiment(cfg);
  else if (kind == "gradopt")
    res = run_gradopt_experiment(cfg);
  else if (kind == "mltoy")
    res = run_mltoy_experiment(cfg);
  else if (kind == "theory")
    throw std::runtime_error("theory has no trial harness; use the theory subcommand");
  else
    throw std::runtime_error("unknown experiment kind: " + kind);
  if (!out_dir.empty()) write_outputs(res, out_dir);
  return res;
}

}  // namespace qtzopt
