#pragma once
#include <functional>
#include <vector>

namespace conekit {

/// Gauss-Legendre rule on [-1, 1]. Nodes are symmetric about 0.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  static const GaussLegendre& get(int n);  // cached per n

  // integrate f over [a, b] with the rule mapped affinely
  double integrate(double a, double b, const std::function<double(double)>& f) const;
};

}  // namespace conekit
