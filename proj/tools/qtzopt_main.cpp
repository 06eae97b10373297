#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qtzopt/config.hpp"
#include "qtzopt/experiments.hpp"

namespace {

using qtzopt::Config;

void print_table(const qtzopt::ExperimentResult& r) {
  std::printf("%s [%s]\n", r.kind.c_str(), r.label.c_str());
  for (const auto& [k, v] : r.baselines) std::printf("  baseline %-10s %.6f\n", k.c_str(), v);
  std::printf("  %-10s %8s %12s %10s %10s %8s %12s\n", "algorithm", "trials", "mean", "stddev",
              "mean_best", "hits", "ratio_pct");
  for (const auto& s : r.stats)
    std::printf("  %-10s %8d %12.4f %10.4f %10.4f %8ld %12.4f\n", s.algorithm.c_str(),
                s.n_trials, s.mean, s.sample_stddev, s.mean_best, s.hits, s.mean_ratio);
  for (const auto& [k, v] : r.cross_ratios) std::printf("  %-24s %8.3f\n", k.c_str(), v);
  std::printf("  wall: %.2fs\n", r.wall_seconds);
}

Config base_config(const std::string& kind, const std::string& config_file) {
  Config cfg = config_file.empty() ? Config{} : Config::from_file(config_file);
  cfg.set("experiment", kind);
  return cfg;
}

struct CommonFlags {
  std::string config_file, out, seeds;
  long trials = 0, budget = 0;
  bool trace = false;
};

void add_common(CLI::App* sub, CommonFlags* c) {
  sub->add_option("--config", c->config_file, "flat key=value config file");
  sub->add_option("--out", c->out, "output directory (summary.csv/json, traces)");
  sub->add_option("--seeds", c->seeds, "comma-separated seed list (default 0..trials-1)");
  sub->add_option("--trials", c->trials, "number of seeded trials");
  sub->add_option("--budget", c->budget, "iteration budget per trial");
  sub->add_flag("--trace", c->trace, "write trace_<algo>_<seed>.csv files");
}

void apply_common(Config& cfg, const CommonFlags& c) {
  if (!c.out.empty()) cfg.set("out", c.out);
  if (!c.seeds.empty()) cfg.set("seeds", c.seeds);
  if (c.trials > 0) cfg.set("trials", std::to_string(c.trials));
  if (c.budget > 0) cfg.set("budget", std::to_string(c.budget));
  if (c.trace) cfg.set("trace", "true");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantization-based global optimization toolkit"};
  app.require_subcommand(1);

  // --- tsp ---
  auto* tsp = app.add_subcommand("tsp", "TSP runs (QTZ/SA/QIA from a nearest-neighbor start)");
  CommonFlags t_c;
  std::string t_algos, t_move, t_instfile, t_save;
  long t_cities = 0, t_iseed = -1;
  double t_side = 0.0;
  add_common(tsp, &t_c);
  tsp->add_option("--cities", t_cities, "number of cities");
  tsp->add_option("--side", t_side, "sampling square side length");
  tsp->add_option("--instance-seed", t_iseed, "seed for city generation");
  tsp->add_option("--instance-file", t_instfile, "load cities from CSV instead");
  tsp->add_option("--save-instance", t_save, "write the generated cities to CSV");
  tsp->add_option("--algos", t_algos, "comma list from qtz,sa,qia");
  tsp->add_option("--move", t_move, "neighborhood: reverse (default) or swap");

  // --- bench ---
  auto* bench = app.add_subcommand("bench", "continuous benchmark functions");
  CommonFlags b_c;
  std::string b_algos, b_fn;
  long b_dim = 0;
  add_common(bench, &b_c);
  bench->add_option("--function", b_fn, "registry name, e.g. drop_wave");
  bench->add_option("--dim", b_dim, "override dimension (generic formulas only)");
  bench->add_option("--algos", b_algos, "comma list from qtz,sa,qia");

  // --- washboard ---
  auto* wash = app.add_subcommand("washboard", "parabolic washboard potential");
  CommonFlags w_c;
  std::string w_algos;
  double w_alpha = 0.0;
  add_common(wash, &w_c);
  wash->add_option("--alpha", w_alpha, "tunneling band parameter (3 wide, 10 narrow)");
  wash->add_option("--algos", w_algos, "comma list from qtz,sa,qia");

  // --- gradopt ---
  auto* gopt = app.add_subcommand("gradopt", "gradient methods with Armijo-Wolfe line search");
  CommonFlags g_c;
  std::string g_fn, g_method;
  bool g_quantized = false, g_plain = false;
  add_common(gopt, &g_c);
  gopt->add_option("--function", g_fn, "registry name, e.g. rosenbrock2d");
  gopt->add_option("--method", g_method, "gd, cg, bfgs, or comma list");
  gopt->add_flag("--quantized", g_quantized, "run only the quantized variant");
  gopt->add_flag("--plain", g_plain, "run only the plain variant");

  // --- mltoy ---
  auto* ml = app.add_subcommand("mltoy", "quantized learning rules on a synthetic task");
  CommonFlags m_c;
  std::string m_opts;
  long m_steps = 0;
  add_common(ml, &m_c);
  ml->add_option("--optimizers", m_opts, "comma list from qsgld,sgd,qsld,adam");
  ml->add_option("--steps", m_steps, "training steps");

  // --- theory ---
  auto* theory = app.add_subcommand("theory", "numeric diagnostics table");

  CLI11_PARSE(app, argc, argv);

  try {
    if (tsp->parsed()) {
      Config cfg = base_config("tsp", t_c.config_file);
      apply_common(cfg, t_c);
      if (t_cities > 0) cfg.set("tsp.cities", std::to_string(t_cities));
      if (t_side > 0) cfg.set("tsp.side", std::to_string(t_side));
      if (t_iseed >= 0) cfg.set("tsp.instance_seed", std::to_string(t_iseed));
      if (!t_instfile.empty()) cfg.set("tsp.instance_file", t_instfile);
      if (!t_save.empty()) cfg.set("tsp.save_instance", t_save);
      if (!t_algos.empty()) cfg.set("algos", t_algos);
      if (!t_move.empty()) cfg.set("tsp.move", t_move);
      print_table(qtzopt::run_experiment(cfg));
    } else if (bench->parsed()) {
      Config cfg = base_config("bench", b_c.config_file);
      apply_common(cfg, b_c);
      if (!b_fn.empty()) cfg.set("bench.function", b_fn);
      if (b_dim > 0) cfg.set("bench.dim", std::to_string(b_dim));
      if (!b_algos.empty()) cfg.set("algos", b_algos);
      print_table(qtzopt::run_experiment(cfg));
    } else if (wash->parsed()) {
      Config cfg = base_config("washboard", w_c.config_file);
      apply_common(cfg, w_c);
      if (w_alpha > 0) cfg.set("washboard.alpha", std::to_string(w_alpha));
      if (!w_algos.empty()) cfg.set("algos", w_algos);
      print_table(qtzopt::run_experiment(cfg));
    } else if (gopt->parsed()) {
      Config cfg = base_config("gradopt", g_c.config_file);
      apply_common(cfg, g_c);
      if (!g_fn.empty()) cfg.set("gradopt.function", g_fn);
      if (!g_method.empty()) cfg.set("gradopt.methods", g_method);
      if (g_quantized && !g_plain) cfg.set("gradopt.variants", "quantized");
      if (g_plain && !g_quantized) cfg.set("gradopt.variants", "plain");
      print_table(qtzopt::run_experiment(cfg));
    } else if (ml->parsed()) {
      Config cfg = base_config("mltoy", m_c.config_file);
      apply_common(cfg, m_c);
      if (!m_opts.empty()) cfg.set("ml.optimizers", m_opts);
      if (m_steps > 0) cfg.set("ml.steps", std::to_string(m_steps));
      print_table(qtzopt::run_experiment(cfg));
    } else if (theory->parsed()) {
      std::cout << qtzopt::theory_report();
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
