#include "gruss/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace gruss::quad_detail {

namespace {

// Newton iteration on P_n(x) = 0 with the standard cosine initial guesses;
// nodes come out ascending and symmetric.
GaussRule compute_rule(int n) {
  GaussRule rule;
  rule.nodes.resize(static_cast<size_t>(n));
  rule.weights.resize(static_cast<size_t>(n));
  const int m = (n + 1) / 2;
  const double pi = 3.14159265358979323846;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) <= 1e-15 * (1.0 + std::abs(x))) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.nodes[static_cast<size_t>(i)] = -x;
    rule.nodes[static_cast<size_t>(n - 1 - i)] = x;
    rule.weights[static_cast<size_t>(i)] = w;
    rule.weights[static_cast<size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) {
    rule.nodes[static_cast<size_t>(n / 2)] = 0.0;
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_rule(int n) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, compute_rule(n)).first;
  }
  return it->second;
}

}  // namespace gruss::quad_detail
