#include "qtzopt/tsp.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qtzopt {

TspInstance::TspInstance(std::vector<Point> cities, double side, std::uint64_t seed)
    : cities_(std::move(cities)), n_(cities_.size()), side_(side), seed_(seed) {
  if (n_ < 3) throw std::domain_error("TspInstance: need at least 3 cities");
  dist_.resize(n_ * n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      double d = std::hypot(cities_[i].x - cities_[j].x, cities_[i].y - cities_[j].y);
      dist_[i * n_ + j] = d;
      dist_[j * n_ + i] = d;
    }
  }
}

TspInstance generate_instance(std::size_t n, double side, std::uint64_t seed) {
  if (n < 3) throw std::domain_error("generate_instance: need at least 3 cities");
  if (!(side > 0.0)) throw std::domain_error("generate_instance: side must be positive");
  Rng rng(seed);
  std::vector<Point> pts(n);
  for (auto& p : pts) {
    p.x = side * rng.uniform();
    p.y = side * rng.uniform();
  }
  return TspInstance(std::move(pts), side, seed);
}

TspInstance load_instance_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file: " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("x,y", 0) != 0)
    throw std::runtime_error("instance file missing 'x,y' header: " + path);
  std::vector<Point> pts;
  double side = 0.0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    Point p;
    char comma = 0;
    if (!(ls >> p.x >> comma >> p.y) || comma != ',')
      throw std::runtime_error("bad instance line: " + line);
    side = std::max({side, p.x, p.y});
    pts.push_back(p);
  }
  return TspInstance(std::move(pts), side, 0);
}

void save_instance_csv(const TspInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write instance file: " + path);
  out << "x,y\n";
  out.precision(17);
  for (const auto& p : inst.cities()) out << p.x << ',' << p.y << '\n';
}

double tour_cost(const TspInstance& inst, const std::vector<int>& order) {
  double c = 0.0;
  const std::size_t n = order.size();
  for (std::size_t i = 0; i < n; ++i)
    c += inst.dist(static_cast<std::size_t>(order[i]),
                   static_cast<std::size_t>(order[(i + 1) % n]));
  return c;
}

Tour nearest_neighbor(const TspInstance& inst, int start) {
  const std::size_t n = inst.size();
  if (start < 0 || static_cast<std::size_t>(start) >= n)
    throw std::domain_error("nearest_neighbor: start city out of range");
  std::vector<int> order;
  order.reserve(n);
  std::vector<char> used(n, 0);
  std::size_t cur = static_cast<std::size_t>(start);
  order.push_back(start);
  used[cur] = 1;
  for (std::size_t k = 1; k < n; ++k) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bj = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (!used[j] && inst.dist(cur, j) < best) {
        best = inst.dist(cur, j);
        bj = j;
      }
    }
    order.push_back(static_cast<int>(bj));
    used[bj] = 1;
    cur = bj;
  }
  double cost = tour_cost(inst, order);
  return Tour{std::move(order), cost};
}

namespace {

double reverse_delta(const TspInstance& inst, const std::vector<int>& o,
                     std::size_t i, std::size_t j) {
  const std::size_t n = o.size();
  if (i == 0 && j == n - 1) return 0.0;  // whole-tour reversal, same cycle
  auto a = static_cast<std::size_t>(o[(i + n - 1) % n]);
  auto b = static_cast<std::size_t>(o[i]);
  auto c = static_cast<std::size_t>(o[j]);
  auto e = static_cast<std::size_t>(o[(j + 1) % n]);
  return inst.dist(a, c) + inst.dist(b, e) - inst.dist(a, b) - inst.dist(c, e);
}

double swap_delta(const TspInstance& inst, const std::vector<int>& o,
                  std::size_t p, std::size_t q) {
  const std::size_t n = o.size();
  if (n == 3) return 0.0;  // any transposition keeps the same triangle
  auto a = static_cast<std::size_t>(o[p]);
  auto b = static_cast<std::size_t>(o[q]);
  auto pp = static_cast<std::size_t>(o[(p + n - 1) % n]);
  auto pn = static_cast<std::size_t>(o[(p + 1) % n]);
  auto qp_ = static_cast<std::size_t>(o[(q + n - 1) % n]);
  auto qn = static_cast<std::size_t>(o[(q + 1) % n]);
  if ((p + 1) % n == q)
    return inst.dist(pp, b) + inst.dist(a, qn) - inst.dist(pp, a) - inst.dist(b, qn);
  if ((q + 1) % n == p)
    return inst.dist(qp_, a) + inst.dist(b, pn) - inst.dist(qp_, b) - inst.dist(a, pn);
  return inst.dist(pp, b) + inst.dist(b, pn) + inst.dist(qp_, a) + inst.dist(a, qn) -
         inst.dist(pp, a) - inst.dist(a, pn) - inst.dist(qp_, b) - inst.dist(b, qn);
}

}  // namespace

Tour random_swap(const TspInstance& inst, const Tour& t, Rng& rng, TspMove move) {
  const std::size_t n = t.order.size();
  auto [p, q] = rng.distinct_pair(n);
  if (p > q) std::swap(p, q);
  Tour out = t;
  if (move == TspMove::kReverse) {
    out.cost += reverse_delta(inst, t.order, p, q);
    std::reverse(out.order.begin() + static_cast<std::ptrdiff_t>(p),
                 out.order.begin() + static_cast<std::ptrdiff_t>(q) + 1);
  } else {
    out.cost += swap_delta(inst, t.order, p, q);
    std::swap(out.order[p], out.order[q]);
  }
  return out;
}

}  // namespace qtzopt
