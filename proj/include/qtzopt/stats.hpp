#pragma once

#include <map>
#include <string>
#include <vector>

namespace qtzopt {

struct MeanStddev {
  double mean = 0.0;
  double stddev = 0.0;  // sample stddev, n-1 denominator; 0 when n == 1
  int n = 0;
  bool single = false;  // flagged when n == 1
};

// Two-pass mean / sample standard deviation.
MeanStddev mean_stddev(const std::vector<double>& xs);

// (baseline - value) / baseline * 100.
double improvement_ratio(double baseline, double value);

// Per-algorithm aggregate row reported by the harness.
struct TrialStats {
  std::string algorithm;
  int n_trials = 0;
  double mean = 0.0;
  double sample_stddev = 0.0;
  bool single_trial = false;
  double mean_best = 0.0;
  double mean_ratio = 0.0;        // per-trial ratio vs that trial's baseline
  double mean_first_hit = -1.0;   // mean over trials that hit; -1 if none
  long hits = 0;
  double mean_evals = 0.0;
  std::map<std::string, double> ratios;  // ratios vs named baselines
};

}  // namespace qtzopt
