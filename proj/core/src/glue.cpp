#include "conekit/glue.hpp"

#include <cmath>
#include <stdexcept>

#include "conekit/util.hpp"

namespace conekit {

MollifierSpec MollifierSpec::standard(double eta, int quad_nodes) {
  if (!(eta > 0.0)) throw std::invalid_argument("MollifierSpec: eta > 0");
  MollifierSpec s;
  s.eta = eta;
  s.quad_nodes = quad_nodes;
  s.raw_profile = [](double x) {
    const double t = 1.0 - x * x;
    return t > 0.0 ? std::exp(-1.0 / t) : 0.0;
  };
  // normalize against the rule in use, so the unit-mass axiom is exact for it
  const auto& gl = GaussLegendre::get(quad_nodes);
  double mass = 0.0;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i)
    mass += gl.weights[i] * s.raw_profile(gl.nodes[i]);
  s.norm = 1.0 / mass;
  return s;
}

double MollifierSpec::theta_cdf(double x) const {
  if (x <= -1.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const auto& gl = GaussLegendre::get(quad_nodes);
  const double mid = 0.5 * (x - 1.0), half = 0.5 * (x + 1.0);
  double s = 0.0;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i)
    s += gl.weights[i] * theta(mid + half * gl.nodes[i]);
  s *= half;
  return std::min(1.0, std::max(0.0, s));
}

namespace {

// integral over x in [-1,1] of max(t1 + x/eta, t2 + eta*y) theta(x) dx,
// split at the kink; the unsplit branches reuse the raw symmetric nodes so
// that unit mass and zero first moment cancel exactly.
double inner_integral(double t1, double t2, double eta, double y, const MollifierSpec& spec) {
  const auto& gl = GaussLegendre::get(spec.quad_nodes);
  const int n = spec.quad_nodes;
  const double xstar = eta * (t2 - t1 + eta * y);
  if (xstar >= 1.0) {
    // max = t2 + eta y on the whole support
    double mass = 0.0;
    for (int i = 0; i < n; ++i) mass += gl.weights[i] * spec.theta(gl.nodes[i]);
    return (t2 + eta * y) * mass;
  }
  if (xstar <= -1.0) {
    // max = t1 + x/eta; the odd part vanishes pairwise by node symmetry
    double mass = 0.0, moment = 0.0;
    for (int i = 0; i < n / 2; ++i) {
      const double th = spec.theta(gl.nodes[n - 1 - i]);
      mass += gl.weights[i] * (spec.theta(gl.nodes[i]) + th);
      moment += gl.weights[i] * th * (gl.nodes[i] + gl.nodes[n - 1 - i]);
    }
    if (n % 2 == 1) mass += gl.weights[n / 2] * spec.theta(0.0);
    return t1 * mass + moment / eta;
  }
  auto left = [&](double x) { return (t2 + eta * y) * spec.theta(x); };
  auto right = [&](double x) { return (t1 + x / eta) * spec.theta(x); };
  return gl.integrate(-1.0, xstar, left) + gl.integrate(xstar, 1.0, right);
}

}  // namespace

double m_eta(double t1, double t2, const MollifierSpec& spec) {
  const auto& gl = GaussLegendre::get(spec.quad_nodes);
  const double eta = spec.eta;
  double acc = 0.0;
  for (int j = 0; j < spec.quad_nodes; ++j) {
    const double y = gl.nodes[j];
    acc += gl.weights[j] * spec.theta(y) * inner_integral(t1, t2, eta, y, spec);
  }
  if (!std::isfinite(acc)) throw std::runtime_error("m_eta: quadrature failure");
  return acc;
}

std::pair<double, double> m_eta_grad(double t1, double t2, const MollifierSpec& spec) {
  const auto& gl = GaussLegendre::get(spec.quad_nodes);
  const double eta = spec.eta;
  double d1 = 0.0, d2 = 0.0;
  for (int j = 0; j < spec.quad_nodes; ++j) {
    const double y = gl.nodes[j];
    const double xstar = eta * (t2 - t1 + eta * y);
    const double cdf = spec.theta_cdf(xstar);
    d1 += gl.weights[j] * spec.theta(y) * (1.0 - cdf);
    d2 += gl.weights[j] * spec.theta(y) * cdf;
  }
  // probabilities of complementary events
  d1 = std::min(1.0, std::max(0.0, d1));
  d2 = std::min(1.0, std::max(0.0, d2));
  if (!std::isfinite(d1) || !std::isfinite(d2)) throw std::runtime_error("m_eta_grad: quadrature failure");
  return {d1, d2};
}

ConvexityReport convexity_check(const MollifierSpec& spec, std::size_t sample_budget,
                                std::uint64_t seed, double tol) {
  ConvexityReport rep;
  Rng rng(seed);
  const double span = 3.0 * (spec.eta + 1.0 / spec.eta);
  for (std::size_t s = 0; s < sample_budget; ++s) {
    const double u1 = rng.uniform(-span, span), u2 = rng.uniform(-span, span);
    const double v1 = rng.uniform(-span, span), v2 = rng.uniform(-span, span);
    const double lam = rng.uniform(0.0, 1.0);
    const double mu = m_eta(u1, u2, spec), mv = m_eta(v1, v2, spec);
    const double mid = m_eta(lam * u1 + (1 - lam) * v1, lam * u2 + (1 - lam) * v2, spec);
    const double slack = lam * mu + (1 - lam) * mv - mid;
    rep.worst_convexity_gap = std::min(rep.worst_convexity_gap, slack);
    if (slack < -tol) ++rep.convexity_violations;

    const double env = mu - std::max(u1, u2);
    rep.worst_envelope_gap = std::min(rep.worst_envelope_gap, env);
    if (env < -tol) ++rep.envelope_violations;

    if (s % 16 == 0) {
      const double c = rng.uniform(-span, span);
      const double err = std::abs(m_eta(u1 + c, u2 + c, spec) - mu - c);
      rep.worst_additivity_error = std::max(rep.worst_additivity_error, err);
    }
    ++rep.samples;
  }
  return rep;
}

}  // namespace conekit
