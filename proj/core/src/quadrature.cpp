#include "conekit/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace conekit {

namespace {

GaussLegendre compute(int n) {
  if (n < 1) throw std::invalid_argument("GaussLegendre: n >= 1");
  GaussLegendre rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // Newton on Legendre P_n, roots seeded by the Chebyshev approximation.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;  // exact symmetry for the middle node
  return rule;
}

}  // namespace

const GaussLegendre& GaussLegendre::get(int n) {
  static std::map<int, GaussLegendre> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute(n)).first;
  return it->second;
}

double GaussLegendre::integrate(double a, double b,
                                const std::function<double(double)>& f) const {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    sum += weights[i] * f(mid + half * nodes[i]);
  return sum * half;
}

}  // namespace conekit
