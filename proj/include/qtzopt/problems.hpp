#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "qtzopt/benchfns.hpp"
#include "qtzopt/rng.hpp"
#include "qtzopt/tsp.hpp"

namespace qtzopt {

// TSP adapter: nearest-neighbor initial tour, random two-city move.
struct TspSearchProblem {
  using State = Tour;

  const TspInstance* inst = nullptr;
  int start_city = 0;
  TspMove move = TspMove::kReverse;

  State initial(Rng&) const { return nearest_neighbor(*inst, start_city); }
  State neighbor(const State& t, long /*level*/, Rng& rng) const {
    return random_swap(*inst, t, rng, move);
  }
  double evaluate(const State& t) const { return t.cost; }
};

// Continuous adapter: candidates are sampled uniformly from a box centered
// on the incumbent, clipped to the domain. The box starts at the full domain
// and contracts by `shrink` per refinement level (one level per strict
// improvement of the best accepted value).
struct BoxSearchProblem {
  using State = Vec;

  std::vector<std::pair<double, double>> domain;
  std::function<double(const Vec&)> fn;
  double shrink = 0.67;
  long max_level = 60;
  std::optional<Vec> fixed_initial;

  State initial(Rng& rng) const {
    if (fixed_initial) return *fixed_initial;
    Vec x(domain.size());
    for (std::size_t i = 0; i < domain.size(); ++i)
      x[i] = rng.uniform(domain[i].first, domain[i].second);
    return x;
  }

  State neighbor(const State& x, long level, Rng& rng) const {
    double scale = std::pow(shrink, static_cast<double>(std::min(level, max_level)));
    Vec y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      double w = (domain[i].second - domain[i].first) * scale;
      double lo = std::max(domain[i].first, x[i] - 0.5 * w);
      double hi = std::min(domain[i].second, x[i] + 0.5 * w);
      y[i] = rng.uniform(lo, hi);
    }
    return y;
  }

  double evaluate(const State& x) const { return fn(x); }
};

inline BoxSearchProblem make_benchmark_problem(const BenchmarkFn& fn, double shrink = 0.67) {
  return BoxSearchProblem{fn.domain, fn.evaluate, shrink, 60, std::nullopt};
}

inline BoxSearchProblem make_washboard_problem(double alpha, double shrink = 0.67) {
  return BoxSearchProblem{{{-20.0, 20.0}},
                          [alpha](const Vec& x) { return washboard(alpha, x[0]); },
                          shrink,
                          60,
                          std::nullopt};
}

}  // namespace qtzopt
