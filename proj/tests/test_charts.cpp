#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "conekit/charts.hpp"
#include "conekit/poisson.hpp"
#include "conekit/util.hpp"

using namespace conekit;

TEST_CASE("chart index set") {
  CHECK(chart_index_set(0.5) == std::vector<int>{1, 2});
  CHECK(chart_index_set(0.75) == std::vector<int>{1, 2, 3});
  CHECK(chart_index_set(0.25) == std::vector<int>{1, 2});
  CHECK_THROWS(chart_index_set(0.0));
  CHECK_THROWS(chart_index_set(1.0));
}

TEST_CASE("psi on explicit points") {
  const ChartMap chart(1, 0.5);
  WPoint w;
  w.abs_n = 0.25;
  w.arg_n = M_PI / 3.0;
  const ZPoint z = psi(chart, w);
  CHECK(z.abs_n == doctest::Approx(0.0625).epsilon(1e-14));
  CHECK(z.arg_n == doctest::Approx(2.0 * M_PI / 3.0).epsilon(1e-14));

  // real positive w_n = 0.3 sits on the closure of chart 1's sector
  WPoint wr;
  wr.abs_n = 0.3;
  wr.arg_n = 0.0;
  CHECK(chart.contains_arg(wr.arg_n, 1e-12));
  CHECK(psi(chart, wr).abs_n == doctest::Approx(0.09).epsilon(1e-14));

  WPoint bad;
  bad.abs_n = 0.0;
  bad.arg_n = chart.sector_center();
  CHECK_THROWS(psi(chart, bad));
  WPoint outside;
  outside.abs_n = 0.5;
  outside.arg_n = chart.sector_center() + 2.5 * chart.sector_halfwidth();
  CHECK_THROWS(psi(chart, outside));
}

TEST_CASE("round trip psi_inverse(psi(w)) = w") {
  Rng rng(7);
  for (double beta : {0.25, 0.5, 0.75}) {
    for (int k : chart_index_set(beta)) {
      const ChartMap chart(k, beta);
      for (int i = 0; i < 1000; ++i) {
        WPoint w;
        w.abs_n = std::exp(rng.uniform(std::log(1e-4), 0.0));
        w.arg_n = chart.sector_center() + chart.sector_halfwidth() * rng.uniform(-0.99, 0.99);
        const WPoint back = psi_inverse(chart, psi(chart, w));
        CHECK(std::abs(back.abs_n - w.abs_n) / w.abs_n < 1e-12);
        CHECK(std::abs(back.arg_n - w.arg_n) < 1e-12);
      }
    }
  }
}

TEST_CASE("model metric values and domain") {
  const HermMat g = model_metric_1d(0.5, 0.5);
  CHECK(g(0, 0).real() == doctest::Approx(0.5).epsilon(1e-14));  // 0.25 * 0.5^{-1}
  CHECK_THROWS(model_metric_1d(0.0, 0.5));
  CHECK_THROWS(model_metric_1d(0.5, 1.0));
}

TEST_CASE("flattening: psi pullback of the model metric is the identity") {
  Rng rng(11);
  for (double beta : {0.25, 0.5, 0.75}) {
    for (int k : chart_index_set(beta)) {
      const ChartMap chart(k, beta);
      for (int i = 0; i < 200; ++i) {
        WPoint w;
        if (i % 2) w.tangential.push_back(cplx(rng.uniform(-1, 1), rng.uniform(-1, 1)));
        w.abs_n = std::exp(rng.uniform(std::log(1e-3), std::log(2.0)));
        w.arg_n = chart.sector_center() + chart.sector_halfwidth() * rng.uniform(-0.999, 0.999);
        const HermMat g = pullback_model_metric(chart, w);
        for (int a = 0; a < g.n; ++a)
          for (int b = 0; b < g.n; ++b)
            CHECK(std::abs(g(a, b) - (a == b ? cplx(1, 0) : cplx(0, 0))) < 1e-12);
      }
    }
  }
}

TEST_CASE("chart covering of the punctured plane") {
  Rng rng(13);
  for (double beta : {0.3, 0.5, 0.75, 0.9}) {
    for (int i = 0; i < 500; ++i) {
      const double argz = rng.uniform(0.0, 2.0 * M_PI);
      bool covered = false;
      for (int k : chart_index_set(beta)) {
        const ChartMap chart(k, beta);
        for (int m = 0; m <= 1; ++m)
          if (chart.contains_arg(beta * (argz + 2.0 * M_PI * m), 1e-9)) covered = true;
      }
      CHECK(covered);
    }
  }
}

TEST_CASE("conic laplacian: closed-form identities") {
  const double beta = 0.6;
  const TransverseGrid tr = TransverseGrid::disc(1e-3, 1.0, 140, 48);

  SUBCASE("|z|^{2 beta} maps to 1") {
    const GridField v = sample_field({ChartKind::Z, 0, beta}, tr, [&](cplx z) {
      return cplx(std::pow(std::abs(z), 2.0 * beta), 0.0);
    });
    const GridField lap = conic_laplacian_apply(v, beta);
    for (const cplx& x : lap.v) CHECK(std::abs(x - 1.0) < 2e-5);
  }
  SUBCASE("Re z is harmonic") {
    const GridField v =
        sample_field({ChartKind::Z, 0, beta}, tr, [](cplx z) { return cplx(z.real(), 0.0); });
    const GridField lap = conic_laplacian_apply(v, beta);
    // truncation of the weighted operator scales like rho^{1 - 2 beta}
    for (int ir = 0; ir < tr.nrad(); ++ir)
      for (int ia = 0; ia < tr.nang(); ++ia)
        CHECK(std::abs(lap.at(0, ir, ia)) <
              2e-4 * std::max(1.0, std::pow(tr.radii[ir], 1.0 - 2.0 * beta)));
  }
  SUBCASE("|z|^2 maps to the weight") {
    const GridField v =
        sample_field({ChartKind::Z, 0, beta}, tr, [](cplx z) { return cplx(std::norm(z), 0.0); });
    const GridField lap = conic_laplacian_apply(v, beta);
    for (int ir = 0; ir < tr.nrad(); ++ir) {
      const double expect = std::pow(tr.radii[ir], 2.0 - 2.0 * beta) / sq(beta);
      // one-sided stencils at the radial boundary carry a larger constant
      const double tol = (ir < 2 || ir >= tr.nrad() - 2) ? 1e-3 : 1e-5;
      for (int ia = 0; ia < tr.nang(); ++ia)
        CHECK(std::abs(lap.at(0, ir, ia) - expect) < tol * expect + 1e-12);
    }
  }
}

TEST_CASE("finite differences are exact on low-degree polynomials (cartesian patch)") {
  const double beta = 0.7;
  auto p = [](cplx z) {
    const double x = z.real(), y = z.imag();
    return cplx(std::pow(x, 4) + std::pow(y, 4) + x * x * x * y - 2.0 * x * x + x * y + 3.0, 0.0);
  };
  auto lap_exact = [&](cplx z) {
    const double x = z.real(), y = z.imag();
    const double pxx = 12.0 * x * x + 6.0 * x * y - 4.0;
    const double pyy = 12.0 * y * y;
    return std::pow(std::abs(z), 2.0 - 2.0 * beta) / sq(beta) * (pxx + pyy) / 4.0;
  };
  const CartesianField f = sample_cartesian(0.5, 1.5, 24, 0.25, 1.25, 20, p);
  const CartesianField lap = conic_laplacian_apply(f, beta);
  for (int iy = 0; iy < f.ny(); ++iy)
    for (int ix = 0; ix < f.nx(); ++ix)
      CHECK(std::abs(lap.at(ix, iy) - lap_exact(f.point(ix, iy))) < 1e-10);
}

TEST_CASE("operator transport: conic laplacian equals the Euclidean one in w") {
  const double beta = 0.75;
  const TransverseGrid tr = TransverseGrid::disc(1e-2, 1.0, 160, 64);
  auto vf = [](cplx z) { return cplx(std::norm(z) + 0.3 * (z * z).real(), 0.0); };
  const GridField v = sample_field({ChartKind::Z, 0, beta}, tr, vf);
  const GridField lap_z = conic_laplacian_apply(v, beta);
  const GridField vw = unfold_to_cone(v, beta);
  const GridField lap_w = hess_mixed(vw);
  double worst = 0.0;
  for (std::size_t i = 0; i < lap_z.v.size(); ++i)
    worst = std::max(worst, std::abs(lap_z.v[i] - lap_w.v[i]));
  CHECK(worst < 5e-4);
}
