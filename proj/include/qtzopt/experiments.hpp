#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qtzopt/config.hpp"
#include "qtzopt/gradopt.hpp"
#include "qtzopt/metaheur.hpp"
#include "qtzopt/stats.hpp"

namespace qtzopt {

// One experiment = (algorithms x seeds) trials plus aggregation. The record
// vectors are kept (traces included only when cfg "trace" is on) so tests can
// replay invariants.
struct ExperimentResult {
  std::string kind;
  std::string label;
  std::vector<TrialStats> stats;
  std::map<std::string, double> baselines;       // e.g. {"nn": 2159.27}
  std::map<std::string, double> cross_ratios;    // e.g. {"qtz_vs_sa": 2.33}
  std::map<std::string, std::vector<RunRecord>> records;
  double wall_seconds = 0.0;
};

ExperimentResult run_tsp_experiment(Config& cfg);
ExperimentResult run_washboard_experiment(Config& cfg);
ExperimentResult run_bench_experiment(Config& cfg);
ExperimentResult run_gradopt_experiment(Config& cfg);
ExperimentResult run_mltoy_experiment(Config& cfg);
std::string theory_report();

// Dispatches on cfg["experiment"], runs, writes summary.csv / summary.json
// (and per-trial trace CSVs when tracing) under cfg["out"] if set.
ExperimentResult run_experiment(Config& cfg);

std::string summary_csv(const ExperimentResult& r);
std::string summary_json(const ExperimentResult& r);
void write_outputs(const ExperimentResult& r, const std::string& out_dir);

// Fan-out helper for per-seed trials; honors QTZOPT_THREADS, results land in
// index order regardless of scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);
int worker_count(std::size_t n);

}  // namespace qtzopt
