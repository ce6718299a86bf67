#pragma once
#include <array>
#include <functional>

#include "conekit/background.hpp"
#include "conekit/holder.hpp"
#include "conekit/matfield.hpp"

namespace conekit {

/// Metric coefficients from a sampled local potential on a w-chart grid:
/// complex Hessian, Hermitian-symmetrized.
struct MetricInW {
  HermField g;
  double positivity_margin = 0.0;
  double hermiticity_residual = 0.0;
};
MetricInW metric_in_w(const GridField& potential_w);

/// Riemann tensor Rm_{mu nubar rho thetabar} =
///   - d2 g_{mu nubar} / dw_rho dwbar_theta
///   + sum g^{sigma taubar} (d g_{mu taubar} / dw_rho)(d g_{sigma nubar} / dwbar_theta)
/// and its norm fully contracted with the inverse metric on all four slots:
/// ||Rm||^2 = sum Rm_{m n r t} conj(Rm_{a b c d}) h_{ma} h_{bn} h_{rc} h_{dt},
/// h = g^{-1} (entrywise h_{ij} = (g^{-1})_{ij}).
struct CurvatureField {
  ChartTag chart;
  TransverseGrid tr;
  TangentialGrid tan;
  int n = 1;
  std::vector<std::array<cplx, 16>> rm;  // ((mu*n+nu)*n+rho)*n+theta
  std::vector<double> norm;
  double symmetry_residual = 0.0;  // worst Kaehler-symmetry violation, relative

  GridField norm_field() const;
};
CurvatureField riemann(const HermField& g);

/// Hoelder trend of ||Rm|| and of the metric derivatives on dyadic shells
/// approaching the divisor; each refinement level doubles the resolution and
/// extends the shell range deeper.
struct CurvatureTrendOptions {
  int levels = 3;
  int base_nrad = 160;
  int base_nang = 64;
  int shell_lo = 2;
  int shell_hi = 8;
  int shell_deepen = 3;  // extra dyadic shells per level
  double growth_threshold = 1.5;
  double stable_threshold = 1.25;
  std::size_t pair_budget = 120000;
  std::uint64_t seed = 2024;
};

struct CurvatureTrendReport {
  HolderReport rm_norm;
  HolderReport dg;   // |dg/dw|
  HolderReport d2g;  // |d2 g / dw dwbar|
  Verdict overall = Verdict::inconclusive;
  double rm_norm_max = 0.0;  // over the finest level
};

/// phi_z: perturbation potential as a function of the z coordinate (n = 1).
/// The total w-potential is omega_potential + u + |s|^{2 beta} + phi_z, all
/// composed with z = w^{1/beta} on the unfolded cone.
CurvatureTrendReport curvature_holder_trend(const ModelGeometry& geom,
                                            const BackgroundResult& bg, double beta,
                                            const std::function<double(cplx)>& phi_z,
                                            double alpha,
                                            const CurvatureTrendOptions& opt = {});

/// Residuals of the differentiated Monge-Ampere identities (n = 1, transverse
/// direction) on a w-chart grid:
///   Delta_phi (d(h+phi)/dw) = df/dw + Delta_0 (dh/dw)
/// and its dbar-derivative with the quadratic inverse-metric term.
struct MaResiduals {
  double first = 0.0;
  double second = 0.0;
};
MaResiduals differentiated_ma_residual(const ModelGeometry& geom, const BackgroundResult& bg,
                                       double beta, const std::function<double(cplx)>& phi_z,
                                       int nrad = 192, int nang = 64);

}  // namespace conekit
