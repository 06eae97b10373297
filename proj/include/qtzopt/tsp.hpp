#pragma once

#include <string>
#include <vector>

#include "qtzopt/rng.hpp"

namespace qtzopt {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Euclidean TSP instance: city coordinates plus a cached symmetric distance
// matrix. Immutable after construction.
class TspInstance {
 public:
  TspInstance(std::vector<Point> cities, double side, std::uint64_t seed);

  std::size_t size() const { return cities_.size(); }
  const std::vector<Point>& cities() const { return cities_; }
  double side() const { return side_; }
  std::uint64_t seed() const { return seed_; }

  double dist(std::size_t i, std::size_t j) const { return dist_[i * n_ + j]; }

 private:
  std::vector<Point> cities_;
  std::vector<double> dist_;
  std::size_t n_;
  double side_;
  std::uint64_t seed_;
};

// Closed tour: a permutation of city indices with its cached cost.
struct Tour {
  std::vector<int> order;
  double cost = 0.0;
};

enum class TspMove {
  kReverse,  // reverse the path between two chosen cities (2-opt style)
  kSwap,     // exchange the positions of two chosen cities
};

// n cities i.i.d. uniform on [0, side]^2, deterministic in seed.
TspInstance generate_instance(std::size_t n, double side, std::uint64_t seed);

// Plain-text CSV interchange: header "x,y", one "x,y" line per city.
TspInstance load_instance_csv(const std::string& path);
void save_instance_csv(const TspInstance& inst, const std::string& path);

double tour_cost(const TspInstance& inst, const std::vector<int>& order);

// Greedy construction: repeatedly append the closest unvisited city,
// ties broken by lowest index.
Tour nearest_neighbor(const TspInstance& inst, int start = 0);

// One random move on the tour. Cost is updated incrementally from the move's
// edge delta (exact to within accumulated double rounding).
Tour random_swap(const TspInstance& inst, const Tour& t, Rng& rng,
                 TspMove move = TspMove::kReverse);

}  // namespace qtzopt
