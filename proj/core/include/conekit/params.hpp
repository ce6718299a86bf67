#pragma once
#include <stdexcept>

namespace conekit {

/// Pair (alpha, beta): Hoelder exponent and cone angle parameter.
/// The cone angle transverse to the divisor is 2*pi*beta.
struct ConeParams {
  double alpha = 0.5;
  double beta = 0.5;

  ConeParams() = default;
  ConeParams(double a, double b) : alpha(a), beta(b) {
    if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("ConeParams: alpha must lie in (0,1)");
    if (!(b > 0.0 && b < 1.0)) throw std::invalid_argument("ConeParams: beta must lie in (0,1)");
  }

  // alpha < 1/beta - 1. Checked where the regularity theory needs it;
  // membership estimators accept violating pairs (negative controls).
  bool admissible() const { return alpha < 1.0 / beta - 1.0; }
  void require_admissible() const {
    if (!admissible())
      throw std::invalid_argument("ConeParams: admissibility alpha < 1/beta - 1 violated");
  }
};

}  // namespace conekit
