#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "conekit/holder.hpp"
#include "conekit/poisson.hpp"
#include "conekit/util.hpp"

using namespace conekit;

namespace {

GridField disc_field(double beta, double rho_min, int nrad, int nang,
                     const std::function<cplx(cplx)>& f) {
  return sample_field({ChartKind::Z, 0, beta}, TransverseGrid::disc(rho_min, 1.0, nrad, nang), f);
}

std::vector<cplx> boundary_of(const GridField& f, const std::function<cplx(cplx)>& exact) {
  std::vector<cplx> bc(f.tan.count() * f.tr.nang());
  for (std::size_t it = 0; it < f.tan.count(); ++it)
    for (int ia = 0; ia < f.tr.nang(); ++ia)
      bc[it * f.tr.nang() + ia] = exact(f.tr.point(f.tr.nrad() - 1, ia));
  return bc;
}

double sup_diff(const GridField& a, const std::function<cplx(cplx)>& exact) {
  double e = 0.0;
  for (int ir = 0; ir < a.tr.nrad(); ++ir)
    for (int ia = 0; ia < a.tr.nang(); ++ia)
      e = std::max(e, std::abs(a.at(0, ir, ia) - exact(a.tr.point(ir, ia))));
  return e;
}

}  // namespace

TEST_CASE("manufactured solutions converge at second order") {
  const double beta = 0.6;
  struct Case {
    std::function<cplx(cplx)> f, exact;
  };
  const Case cases[] = {
      {[](cplx) { return cplx(1, 0); },
       [beta](cplx z) { return cplx(std::pow(std::abs(z), 2 * beta), 0); }},
      {[](cplx) { return cplx(0, 0); }, [](cplx z) { return cplx(z.real(), 0); }},
      {[beta](cplx z) { return cplx(std::pow(std::abs(z), 2 - 2 * beta) / sq(beta), 0); },
       [](cplx z) { return cplx(std::norm(z), 0); }},
  };
  for (const Case& cs : cases) {
    std::vector<double> errs;
    for (int level = 0; level < 3; ++level) {
      const GridField f = disc_field(beta, 1e-5, 64 << level, 32 << level, cs.f);
      const GridField v = solve_poisson(f, boundary_of(f, cs.exact), beta);
      errs.push_back(sup_diff(v, cs.exact));
    }
    CHECK(std::log2(errs[0] / errs[1]) > 1.8);
    CHECK(std::log2(errs[1] / errs[2]) > 1.8);
    CHECK(errs[2] < 1e-3);
  }
}

TEST_CASE("solver rejects malformed input") {
  const GridField f = disc_field(0.5, 1e-3, 32, 16, [](cplx) { return cplx(1, 0); });
  std::vector<cplx> bad_bc(7);
  CHECK_THROWS(solve_poisson(f, bad_bc, 0.5));
  GridField wrong = f;
  wrong.chart.kind = ChartKind::W;
  CHECK_THROWS(solve_poisson(wrong, std::vector<cplx>(16), 0.5));
}

TEST_CASE("equivariance: solving in z matches the Euclidean solve in w") {
  const double beta = 0.75;
  const GridField f = disc_field(beta, 1e-5, 128, 48, [](cplx z) {
    return cplx(1.0 + 0.2 * z.real(), 0.0);
  });
  const std::vector<cplx> bc(48, cplx(0.0, 0.0));
  const GridField vz = solve_poisson(f, bc, beta);
  const GridField fw = unfold_to_cone(f, beta);
  const GridField vw = solve_poisson_euclidean(fw, bc);
  double worst = 0.0;
  for (std::size_t i = 0; i < vz.v.size(); ++i)
    worst = std::max(worst, std::abs(vz.v[i] - vw.v[i]));
  // the two discretizations are exactly equivalent under the unfolding
  CHECK(worst < 1e-10);
}

TEST_CASE("cone residual field") {
  SUBCASE("constant ftilde gives h = 0") {
    const double beta = 0.5;
    const GridField ft = disc_field(beta, 1e-3, 64, 16, [](cplx) { return cplx(2.2, 0); });
    const ConeResidual cr = cone_residual(ft, beta);
    CHECK(std::abs(cr.f0 - cplx(2.2, 0.0)) < 1e-10);
    CHECK(cr.h.max_abs() < 1e-8);
  }
  SUBCASE("ftilde = Re(x) at beta = 1/2: envelope exponent 3 beta - 2") {
    const double beta = 0.5;
    const GridField ft =
        disc_field(beta, 1e-4, 160, 32, [](cplx zeta) { return cplx(zeta.real(), 0); });
    const ConeResidual cr = cone_residual(ft, beta);
    CHECK(cr.envelope.slope == doctest::Approx(3 * beta - 2).epsilon(0.02));
  }
  SUBCASE("ftilde = |x|^alpha: envelope exponent 2 beta - 2 + alpha beta") {
    const double beta = 0.6, alpha = 0.5;
    const GridField ft = disc_field(beta, 1e-4, 160, 32, [alpha](cplx zeta) {
      return cplx(std::pow(std::abs(zeta), alpha), 0);
    });
    const ConeResidual cr = cone_residual(ft, beta);
    CHECK(cr.envelope.slope ==
          doctest::Approx(2 * beta - 2 + alpha * beta).epsilon(0.02));
  }
}

TEST_CASE("expansion extraction") {
  SUBCASE("constant ftilde: a = beta^{-2} c") {
    const double beta = 0.5;
    const ConeParams params(0.6, beta);
    const GridField ft = disc_field(beta, 1e-4, 120, 24, [](cplx) { return cplx(0.7, 0); });
    const GridField v = disc_field(beta, 1e-4, 120, 24, [&](cplx z) {
      return cplx(4.0 * 0.7 * std::abs(z), 0);  // a |z|^{2 beta} with 2 beta = 1
    });
    const ExpansionResult ex = extract_expansion(v, ft, params, 0.3);
    CHECK(std::abs(ex.a - cplx(2.8, 0)) < 1e-6);  // 0.7 / 0.25
  }
  SUBCASE("manufactured a, b with the b branch active") {
    const double beta = 0.6, ap = 0.3;
    const ConeParams params(0.5, beta);
    const GridField v = disc_field(beta, std::pow(2.0, -14), 240, 32, [&](cplx z) {
      const double r = std::abs(z);
      return 1.0 * std::pow(r, 2 * beta) + 0.3 * z + std::pow(r, 2 * beta * (1 + ap));
    });
    TransverseGrid trz = TransverseGrid::disc(std::pow(2.0, -14), 1.0, 240, 32);
    for (double& r : trz.radii) r = std::pow(r, beta);
    const GridField ft = sample_field({ChartKind::Z, 0, beta}, trz, [&](cplx zeta) {
      return cplx(sq(beta) + sq(beta * (1 + ap)) * std::pow(std::abs(zeta), 2 * ap), 0);
    });
    REQUIRE(ap * beta > 1 - 2 * beta);  // dichotomy: b branch
    const ExpansionResult ex = extract_expansion(v, ft, params, ap);
    CHECK(std::abs(ex.a - cplx(1, 0)) < 0.01);
    CHECK(std::abs(ex.b - cplx(0.3, 0)) < 0.01);
    CHECK(ex.b_branch_active);
    const DecayCheck dc = check_decay(ex.V, params, ap);
    CHECK(dc.pass);
  }
  SUBCASE("dichotomy: b = 0 exactly when alpha' beta < 1 - 2 beta") {
    const double beta = 0.4, ap = 0.3;  // ap * beta = 0.12 < 0.2
    const ConeParams params(0.6, beta);
    const GridField v = disc_field(beta, std::pow(2.0, -14), 240, 32, [&](cplx z) {
      const double r = std::abs(z);
      return 1.0 * std::pow(r, 2 * beta) + 0.3 * z + std::pow(r, 2 * beta * (1 + ap));
    });
    TransverseGrid trz = TransverseGrid::disc(std::pow(2.0, -14), 1.0, 240, 32);
    for (double& r : trz.radii) r = std::pow(r, beta);
    const GridField ft = sample_field({ChartKind::Z, 0, beta}, trz, [&](cplx zeta) {
      return cplx(sq(beta) + sq(beta * (1 + ap)) * std::pow(std::abs(zeta), 2 * ap), 0);
    });
    const ExpansionResult ex = extract_expansion(v, ft, params, ap);
    CHECK(ex.b == cplx(0.0, 0.0));
    CHECK_FALSE(ex.b_branch_active);
    // the linear term is harmless for beta < 1/2: both estimates still decay
    CHECK(check_decay(ex.V, params, ap).pass);
  }
  SUBCASE("the dichotomy boundary is rejected") {
    const double beta = 0.4;
    const ConeParams params(0.9, beta);
    const double ap = (1 - 2 * beta) / beta;  // exactly on the boundary
    const GridField v = disc_field(beta, 1e-3, 64, 16, [](cplx) { return cplx(0, 0); });
    CHECK_THROWS(extract_expansion(v, v, params, ap));
  }
  SUBCASE("inadmissible parameters are rejected") {
    const GridField v = disc_field(0.75, 1e-3, 64, 16, [](cplx) { return cplx(0, 0); });
    CHECK_THROWS(extract_expansion(v, v, ConeParams(0.5, 0.75), 0.3));
  }
}

TEST_CASE("check_decay on the model remainder |z|^{2 beta + alpha' beta}") {
  const double beta = 0.6, ap = 0.3;
  const ConeParams params(0.5, beta);
  const GridField V = disc_field(beta, std::pow(2.0, -14), 280, 24, [&](cplx z) {
    return cplx(std::pow(std::abs(z), 2 * beta + ap * beta), 0);
  });
  const DecayCheck dc = check_decay(V, params, ap);
  CHECK(dc.pass);
  CHECK(dc.second_derivative.slope == doctest::Approx(ap * beta).epsilon(0.05));
  CHECK(dc.conic_derivative.slope == doctest::Approx(ap * beta).epsilon(0.05));

  const GridField zero = disc_field(beta, std::pow(2.0, -14), 280, 24,
                                    [](cplx) { return cplx(0, 0); });
  CHECK(check_decay(zero, params, ap).pass);
}

TEST_CASE("first derivative bound") {
  const double beta = 0.6, ap = 0.3;
  const ConeParams params(0.5, beta);
  SUBCASE("model F: fitted envelope dominated by the power term") {
    const GridField F = disc_field(beta, std::pow(2.0, -14), 280, 24, [&](cplx z) {
      return cplx(std::pow(std::abs(z), 2 * beta + ap * beta), 0);
    });
    const FirstDerivativeBound out = first_derivative_bound(F, params, ap);
    // |dF/dz| = (beta + ap beta / 2) |z|^{2 beta - 1 + ap beta}
    CHECK(out.envelope.c1 == doctest::Approx(beta + ap * beta / 2).epsilon(0.05));
    CHECK(std::abs(out.envelope.c2) < 0.02);
    CHECK(out.claim_checked);
    CHECK(out.claim_pass);
  }
  SUBCASE("linear F: claim quantity vanishes and b is recovered") {
    const GridField F = disc_field(beta, std::pow(2.0, -14), 280, 48,
                                   [](cplx z) { return 0.45 * z; });
    const FirstDerivativeBound out = first_derivative_bound(F, params, ap);
    // angular truncation of d/dz limits the recovery accuracy
    CHECK(std::abs(out.b - cplx(0.45, 0)) < 1e-5);
    CHECK(out.claim_pass);
  }
  SUBCASE("beta < 1/2: the constant basis absorbs the tail") {
    const ConeParams p04(0.6, 0.4);
    const GridField F = disc_field(0.4, std::pow(2.0, -14), 280, 24, [&](cplx z) {
      return cplx(std::pow(std::abs(z), 2 * 0.4 + 0.2 * 0.4), 0) + 0.2 * z;
    });
    const FirstDerivativeBound out = first_derivative_bound(F, p04, 0.2);
    CHECK(out.envelope.c2 == doctest::Approx(0.2).epsilon(0.25));
    CHECK_FALSE(out.claim_checked);
  }
}

TEST_CASE("n = 2: tangential coupling by damped fixed point") {
  const double beta = 0.6;
  const TransverseGrid tr = TransverseGrid::disc(1e-4, 1.0, 96, 24);
  const TangentialGrid tan = TangentialGrid::square(0.4, 7);
  auto exact = [&](cplx w1, cplx zn) {
    return cplx(std::norm(w1) + (1.0 + 0.3 * w1.real()) * std::pow(std::abs(zn), 2 * beta), 0.0);
  };
  const GridField f = sample_field({ChartKind::Z, 0, beta}, tr, tan, [&](cplx w1, cplx) {
    return cplx(2.0 + 0.3 * w1.real(), 0.0);
  });
  std::vector<cplx> bc(tan.count() * tr.nang());
  for (std::size_t it = 0; it < tan.count(); ++it)
    for (int ia = 0; ia < tr.nang(); ++ia)
      bc[it * tr.nang() + ia] = exact(tan.point(it), tr.point(tr.nrad() - 1, ia));
  const GridField v = solve_poisson(f, bc, beta);
  double worst = 0.0;
  for (std::size_t it = 0; it < tan.count(); ++it)
    for (int ir = 0; ir < tr.nrad(); ++ir)
      for (int ia = 0; ia < tr.nang(); ++ia)
        worst = std::max(worst, std::abs(v.at(it, ir, ia) - exact(tan.point(it), tr.point(ir, ia))));
  CHECK(worst < 5e-4);

  // coefficient regularity along the divisor: a(w1) = beta^{-2} ftilde(w1, 0)
  // recovered per tangential point from the solved field
  TransverseGrid trz = tr;
  for (double& r : trz.radii) r = std::pow(r, beta);
  const GridField ft = sample_field({ChartKind::Z, 0, beta}, trz, tan, [&](cplx w1, cplx) {
    return cplx(sq(beta) * (1.0 + 0.3 * w1.real()), 0.0);
  });
  const ConeParams params(0.5, beta);
  const ExpansionResult ex = extract_expansion(v, ft, params, 0.3);
  CHECK(std::abs(ex.a - cplx(1.0, 0.0)) < 0.02);  // tangential mean of 1 + 0.3 Re w1
}
