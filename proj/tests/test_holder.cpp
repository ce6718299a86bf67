#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "conekit/holder.hpp"
#include "conekit/util.hpp"

using namespace conekit;

namespace {

GridField ray_field(double rho_min, int n, const std::function<double(double)>& f) {
  const TransverseGrid tr = TransverseGrid::ray(rho_min, 1.0, n);
  return sample_field({ChartKind::Z, 0, 1.0}, tr,
                      [&](cplx z) { return cplx(f(std::abs(z)), 0.0); });
}

GridField deep_disc_field(double beta, double rho_min, int nrad, int nang,
                          const std::function<cplx(cplx)>& f) {
  const TransverseGrid tr = TransverseGrid::disc(rho_min, 1.0, nrad, nang);
  return sample_field({ChartKind::Z, 0, beta}, tr, f);
}

}  // namespace

TEST_CASE("holder seminorm: linear function on [0,1]") {
  const GridField f = ray_field(1e-9, 400, [](double x) { return x; });
  const HolderReport rep = holder_seminorm(f, 0.5, 50000);
  // true seminorm sup |x-y|^{1/2} = 1, attained at the far pair
  CHECK(rep.seminorm_estimate == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(rep.verdict == Verdict::stable);
  // estimates are monotone under window deepening
  for (std::size_t i = 1; i < rep.refinement_trend.size(); ++i)
    CHECK(rep.refinement_trend[i].second >= rep.refinement_trend[i - 1].second);
}

TEST_CASE("holder seminorm: constant function") {
  const GridField f = ray_field(1e-9, 200, [](double) { return 2.5; });
  const HolderReport rep = holder_seminorm(f, 0.5, 10000);
  CHECK(rep.seminorm_estimate == 0.0);
  CHECK(rep.verdict == Verdict::stable);
}

TEST_CASE("holder seminorm: |x|^{0.3} against alpha = 0.5 diverges near 0") {
  const GridField f = ray_field(1e-9, 400, [](double x) { return std::pow(x, 0.3); });
  const HolderReport rep = holder_seminorm(f, 0.5, 50000);
  CHECK(rep.verdict == Verdict::diverging);
}

TEST_CASE("holder seminorm rejects bad input") {
  const GridField f = ray_field(1e-3, 50, [](double x) { return x; });
  CHECK_THROWS(holder_seminorm(f, 1.5, 1000));
  PointCloud empty;
  CHECK_THROWS(holder_seminorm(empty, 0.5, HolderOptions{}));
}

TEST_CASE("phi function values and bounds") {
  CHECK(phi_function(1.0, M_PI, 0.5) == doctest::Approx(2.0).epsilon(1e-14));  // 4 / 4^{1/2}
  for (double alpha : {0.1, 0.3, 0.7, 0.9})
    CHECK(phi_function(1.0, M_PI, alpha) ==
          doctest::Approx(4.0 / std::pow(4.0, alpha)).epsilon(1e-13));
  CHECK_THROWS(phi_function(1.0, 0.0, 0.5));

  Rng rng(3);
  for (int i = 0; i < 20000; ++i) {
    const double r = std::exp(rng.uniform(std::log(1e-4), std::log(10.0)));
    const double t = rng.uniform(0.0, M_PI);
    const double alpha = rng.uniform(0.05, 0.95);
    const double v = phi_function(r, t, alpha);
    CHECK(v <= 4.0 + 1e-12);
    const double c = std::cos(t);
    if (c > 0.0) {
      // bound from the proof: 2 (1-cos t)^{1-a} / (1+cos t)^a <= 2
      CHECK(v <= 2.0 * std::pow(1.0 - c, 1.0 - alpha) / std::pow(1.0 + c, alpha) + 1e-12);
    }
  }
  // near r -> 0, t = pi the bound is attained
  CHECK(phi_function(1e-4, M_PI, 0.5) > 3.99);
}

TEST_CASE("phase multiply: bound with constant 3, explicit cases") {
  const TransverseGrid tr = TransverseGrid::disc(1e-6, 1.0, 90, 36);
  const ChartTag tag{ChartKind::W, 1, 0.5};

  SUBCASE("|w|^{1/2} at alpha = 1/2") {
    const GridField f =
        sample_field(tag, tr, [](cplx w) { return cplx(std::sqrt(std::abs(w)), 0.0); });
    const GridField g = phase_multiply(f, PhaseDirection::w);
    const PhaseBoundCheck r = phase_bound_check(f, g, 0.5, 30000, 99);
    CHECK(r.violations == 0);
    CHECK(r.pairs > 20000);
  }
  SUBCASE("Re w at alpha = 0.9, conjugate direction") {
    const GridField f = sample_field(tag, tr, [](cplx w) { return cplx(w.real(), 0.0); });
    const GridField g = phase_multiply(f, PhaseDirection::conj_w);
    const PhaseBoundCheck r = phase_bound_check(f, g, 0.9, 30000, 100);
    CHECK(r.violations == 0);
  }
  SUBCASE("zero maps to zero") {
    const GridField f = sample_field(tag, tr, [](cplx) { return cplx(0.0, 0.0); });
    const GridField g = phase_multiply(f, PhaseDirection::w);
    CHECK(g.max_abs() == 0.0);
  }
  SUBCASE("nonvanishing field is rejected") {
    const GridField f =
        sample_field(tag, tr, [](cplx w) { return cplx(1.0 + std::abs(w), 0.0); });
    CHECK_THROWS(phase_multiply(f, PhaseDirection::w));
  }
}

TEST_CASE("cw membership") {
  const int nrad = 560, nang = 36;
  SUBCASE("|z|^{2 beta} is Lipschitz after pullback") {
    const double beta = 0.6;
    const GridField f = deep_disc_field(beta, 1e-24, nrad, nang, [&](cplx z) {
      return cplx(std::pow(std::abs(z), 2.0 * beta), 0.0);
    });
    const CwReport rep = cw_membership(f, ConeParams(0.4, beta));
    CHECK(rep.overall == Verdict::stable);
    CHECK(rep.per_chart.size() == chart_index_set(beta).size());
  }
  SUBCASE("|z|^{2-2 beta} at beta = 0.75: exponent comparison") {
    const double beta = 0.75;
    const GridField f = deep_disc_field(beta, 1e-24, nrad, nang, [&](cplx z) {
      return cplx(std::pow(std::abs(z), 2.0 - 2.0 * beta), 0.0);
    });
    // pullback is |w|^{2/3}: stable at alpha = 0.3, diverging at 0.7
    CHECK(cw_membership(f, ConeParams(0.3, beta)).overall == Verdict::stable);
    CHECK(cw_membership(f, ConeParams(0.7, beta)).overall == Verdict::diverging);
  }
  SUBCASE("Re z at beta = 0.75, alpha = 0.3") {
    const GridField f =
        deep_disc_field(0.75, 1e-24, nrad, nang, [](cplx z) { return cplx(z.real(), 0.0); });
    CHECK(cw_membership(f, ConeParams(0.3, 0.75)).overall == Verdict::stable);
  }
}

TEST_CASE("dw membership") {
  const int nrad = 560, nang = 36;
  SUBCASE("|z|^{2 beta} has constant transverse Hessian in w") {
    const double beta = 0.6;
    const GridField f = deep_disc_field(beta, 1e-24, nrad, nang, [&](cplx z) {
      return cplx(std::pow(std::abs(z), 2.0 * beta), 0.0);
    });
    const MixedHessianReport rep = dw_membership(f, ConeParams(0.4, beta));
    CHECK(rep.overall == Verdict::stable);
    CHECK(rep.components.count("k1:nn") == 1);
    CHECK(rep.components.count("k1:nn_pure") == 1);
  }
  SUBCASE("affine in |z|^{2 beta} stays stable") {
    const double beta = 0.75;
    const GridField f = deep_disc_field(beta, 1e-24, nrad, nang, [&](cplx z) {
      return cplx(0.7 * std::pow(std::abs(z), 2.0 * beta) + 1.3, 0.0);
    });
    CHECK(dw_membership(f, ConeParams(0.3, beta)).overall == Verdict::stable);
  }
  SUBCASE("smooth f with nonzero transverse gradient: pure second derivative diverges") {
    const double beta = 0.75;  // 1/beta - 2 < 0
    const GridField f =
        deep_disc_field(beta, 1e-24, nrad, nang, [](cplx z) { return cplx(z.real(), 0.0); });
    const MixedHessianReport rep = dw_membership(f, ConeParams(0.3, beta));
    CHECK(rep.overall == Verdict::diverging);
    // the mixed Hessian itself vanishes; the divergence is in the pure term
    CHECK(rep.components.at("k1:nn").verdict == Verdict::stable);
    CHECK(rep.components.at("k1:nn_pure").verdict == Verdict::diverging);
  }
  SUBCASE("pullback-smooth fields pass") {
    const double beta = 0.6;
    const GridField f = deep_disc_field(beta, 1e-24, nrad, nang, [&](cplx z) {
      return cplx(std::exp(-std::pow(std::abs(z), 2.0 * beta)), 0.0);
    });
    CHECK(dw_membership(f, ConeParams(0.4, beta)).overall == Verdict::stable);
  }
  SUBCASE("n = 2: mixed transverse components vanish at the divisor") {
    const double beta = 0.6;
    const TransverseGrid tr = TransverseGrid::disc(1e-10, 1.0, 160, 16);
    const TangentialGrid tan = TangentialGrid::square(0.5, 7);
    const GridField f =
        sample_field({ChartKind::Z, 0, beta}, tr, tan, [&](cplx w1, cplx zn) {
          return cplx(std::norm(w1) + std::pow(std::abs(zn), 2.0 * beta), 0.0);
        });
    const MixedHessianReport rep = dw_membership(f, ConeParams(0.4, beta));
    CHECK(rep.overall == Verdict::stable);
    for (const auto& [key, bv] : rep.boundary_vanishing) CHECK(bv.first < 1e-5);
    CHECK(rep.boundary_vanishing.size() >= 2);
  }
}
