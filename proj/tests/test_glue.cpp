#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "conekit/glue.hpp"
#include "conekit/util.hpp"

using namespace conekit;

TEST_CASE("mollifier axioms") {
  const MollifierSpec spec = MollifierSpec::standard(0.5);
  const auto& gl = GaussLegendre::get(spec.quad_nodes);
  double mass = 0.0, moment = 0.0;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    mass += gl.weights[i] * spec.theta(gl.nodes[i]);
    moment += gl.weights[i] * gl.nodes[i] * spec.theta(gl.nodes[i]);
  }
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(moment) < 1e-15);
  CHECK(spec.theta(1.0) == 0.0);
  CHECK(spec.theta(-1.00001) == 0.0);
  CHECK(spec.theta(0.0) > 0.0);
  CHECK_THROWS(MollifierSpec::standard(0.0));
}

TEST_CASE("locality: m_eta equals the larger argument beyond the gap") {
  Rng rng(21);
  for (double eta : {0.25, 1.0, 2.0}) {
    const MollifierSpec spec = MollifierSpec::standard(eta);
    const double gap = eta + 1.0 / eta;
    for (int i = 0; i < 40; ++i) {
      const double t2 = rng.uniform(-8.0, 8.0);
      const double t1 = t2 + gap + 0.1;
      CHECK(std::abs(m_eta(t1, t2, spec) - t1) < 1e-12);
      CHECK(std::abs(m_eta(t2, t1 + 0.0, spec) - t1) < 1e-12);  // swapped side
    }
  }
}

TEST_CASE("m_eta between max and max + gap; asymmetric scaling") {
  const MollifierSpec spec = MollifierSpec::standard(0.5);
  const double gap = 0.5 + 2.0;
  Rng rng(22);
  for (int i = 0; i < 200; ++i) {
    const double t1 = rng.uniform(-4, 4), t2 = rng.uniform(-4, 4);
    const double m = m_eta(t1, t2, spec);
    CHECK(m >= std::max(t1, t2) - 1e-12);
    CHECK(m <= std::max(t1, t2) + gap + 1e-12);
  }
  // the mollifiers scale oppositely in eta, yet the value is symmetric in
  // (t1, t2): both bumps are even, so the smoothing kernel h2 - h1 is too
  const double a = m_eta(0.3, 1.0, spec), b = m_eta(1.0, 0.3, spec);
  CHECK(std::abs(a - b) < 1e-10);
  // the scaling itself shows in the support: theta(eta h) lives on [-1/eta, 1/eta]
  CHECK(spec.theta(spec.eta * (0.9 / spec.eta)) > 0.0);
  CHECK(spec.theta(spec.eta * (1.1 / spec.eta)) == 0.0);
}

TEST_CASE("gradient: box, sum, locality region, finite differences") {
  const MollifierSpec spec = MollifierSpec::standard(0.5);
  const double gap = 0.5 + 2.0;
  {
    const auto [d1, d2] = m_eta_grad(gap + 0.2, 0.0, spec);
    CHECK(d1 == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(d2 == doctest::Approx(0.0).epsilon(1e-10));
  }
  {
    const auto [d1, d2] = m_eta_grad(0.3, 0.3, spec);
    CHECK(d1 >= 0.0);
    CHECK(d1 <= 1.0);
    CHECK(d2 >= 0.0);
    CHECK(d2 <= 1.0);
    CHECK(d1 + d2 == doctest::Approx(1.0).epsilon(1e-10));
  }
  Rng rng(23);
  for (int i = 0; i < 300; ++i) {
    const double t1 = rng.uniform(-5, 5), t2 = rng.uniform(-5, 5);
    const auto [d1, d2] = m_eta_grad(t1, t2, spec);
    const double h = 1e-4;
    const double fd1 = (m_eta(t1 + h, t2, spec) - m_eta(t1 - h, t2, spec)) / (2 * h);
    const double fd2 = (m_eta(t1, t2 + h, spec) - m_eta(t1, t2 - h, spec)) / (2 * h);
    CHECK(std::abs(fd1 - d1) < 1e-6);
    CHECK(std::abs(fd2 - d2) < 1e-6);
    CHECK(d1 + d2 == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("convexity, envelope, additivity") {
  const MollifierSpec spec = MollifierSpec::standard(1.0);
  const ConvexityReport rep = convexity_check(spec, 2000, 4242);
  CHECK(rep.convexity_violations == 0);
  CHECK(rep.envelope_violations == 0);
  CHECK(rep.worst_additivity_error < 1e-9);
  CHECK(rep.samples == 2000);
}
