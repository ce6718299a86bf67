#pragma once
#include <cstdint>
#include <functional>

#include "conekit/quadrature.hpp"

namespace conekit {

/// Even bump profile with unit mass and support in [-1, 1], plus the
/// quadrature rule the regularized max integrates against. The default
/// profile is exp(-1/(1-x^2)) normalized by its own quadrature integral, so
/// the unit-mass axiom holds exactly for the rule in use.
struct MollifierSpec {
  double eta = 0.25;
  int quad_nodes = 64;
  std::function<double(double)> raw_profile;  // before normalization
  double norm = 1.0;                          // 1 / integral of raw profile

  static MollifierSpec standard(double eta, int quad_nodes = 64);
  double theta(double x) const { return x > -1.0 && x < 1.0 ? norm * raw_profile(x) : 0.0; }
  // integral of theta over [-1, x], by panel quadrature
  double theta_cdf(double x) const;
};

/// M_eta(t1, t2): mollified max with the asymmetric scaling
/// theta(eta h1) theta(h2 / eta). Equals max exactly once the gap exceeds
/// eta + 1/eta.
double m_eta(double t1, double t2, const MollifierSpec& spec);
std::pair<double, double> m_eta_grad(double t1, double t2, const MollifierSpec& spec);

struct ConvexityReport {
  std::size_t samples = 0;
  std::size_t convexity_violations = 0;
  std::size_t envelope_violations = 0;  // M_eta < max(t1,t2)
  double worst_convexity_gap = 0.0;     // most negative slack seen
  double worst_envelope_gap = 0.0;
  double worst_additivity_error = 0.0;  // |M(t+c) - M(t) - c|
};
ConvexityReport convexity_check(const MollifierSpec& spec, std::size_t sample_budget,
                                std::uint64_t seed, double tol = 1e-9);

}  // namespace conekit
