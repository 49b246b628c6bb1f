#include "speclab/numerical.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>

namespace speclab {

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

NumericalMonoid::NumericalMonoid(std::vector<std::int64_t> generators) {
  for (std::int64_t g : generators)
    if (g <= 0) throw std::invalid_argument("numerical monoid generators must be positive");
  std::sort(generators.begin(), generators.end());
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
  gens_ = std::move(generators);
  if (gens_.empty()) return;

  gcd_ = 0;
  for (std::int64_t g : gens_) gcd_ = gcd64(gcd_, g);

  // Apery set of the scaled monoid via shortest paths on residues modulo
  // the smallest scaled generator.
  const std::int64_t a0 = gens_[0] / gcd_;
  std::vector<std::int64_t> dist(static_cast<std::size_t>(a0),
                                 std::numeric_limits<std::int64_t>::max());
  dist[0] = 0;
  using Node = std::pair<std::int64_t, std::int64_t>;  // (value, residue)
  std::priority_queue<Node, std::vector<Node>, std::greater<Node>> pq;
  pq.emplace(0, 0);
  while (!pq.empty()) {
    auto [d, r] = pq.top();
    pq.pop();
    if (d > dist[static_cast<std::size_t>(r)]) continue;
    for (std::int64_t g : gens_) {
      const std::int64_t gs = g / gcd_;
      const std::int64_t nr = (r + gs) % a0;
      const std::int64_t nd = d + gs;
      if (nd < dist[static_cast<std::size_t>(nr)]) {
        dist[static_cast<std::size_t>(nr)] = nd;
        pq.emplace(nd, nr);
      }
    }
  }
  apery_ = std::move(dist);
  frobenius_ = -1;
  for (std::int64_t d : apery_) frobenius_ = std::max(frobenius_, d - a0);
}

bool NumericalMonoid::member(std::int64_t v) const {
  if (v == 0) return true;
  if (v < 0 || gens_.empty()) return false;
  if (v % gcd_ != 0) return false;
  const std::int64_t s = v / gcd_;
  const std::int64_t a0 = gens_[0] / gcd_;
  return s >= apery_[static_cast<std::size_t>(s % a0)];
}

}  // namespace speclab
