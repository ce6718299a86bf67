#pragma once
#include <vector>

#include "conekit/fd.hpp"
#include "conekit/grid.hpp"
#include "conekit/herm.hpp"
#include "conekit/params.hpp"

namespace conekit {

/// Index set K: positive integers below 2 + 2*beta. {1,2} for beta <= 1/2,
/// {1,2,3} above.
std::vector<int> chart_index_set(double beta);

/// Point in w coordinates. The transverse coordinate keeps its argument as an
/// unreduced real so the fractional power branch stays well defined.
struct WPoint {
  std::vector<cplx> tangential;  // w_1 .. w_{n-1}
  double abs_n = 0.0;
  double arg_n = 0.0;
  int dim() const { return static_cast<int>(tangential.size()) + 1; }
  cplx last() const { return std::polar(abs_n, arg_n); }
};

struct ZPoint {
  std::vector<cplx> tangential;
  double abs_n = 0.0;
  double arg_n = 0.0;
  int dim() const { return static_cast<int>(tangential.size()) + 1; }
  cplx last() const { return std::polar(abs_n, arg_n); }
};

/// Singular coordinate change psi_k(w) = (w_1, ..., w_{n-1}, w_n^{1/beta}) on
/// the angular sector of index k.
struct ChartMap {
  int k = 1;
  double beta = 0.5;
  double branch_offset = 0.0;  // added to the principal argument when lifting

  ChartMap() = default;
  ChartMap(int k_, double beta_);

  double sector_center() const { return k * beta * M_PI / (1.0 + beta); }
  double sector_halfwidth() const { return beta * M_PI / (1.0 + beta); }
  // z-side arc covered by the chart image (arguments of z_n)
  double image_center() const { return sector_center() / beta; }
  double image_halfwidth() const { return sector_halfwidth() / beta; }

  bool contains_arg(double arg_wn, double tol = 1e-12) const;
  /// Lift a complex w_n into the chart's branch: the unreduced argument
  /// closest to the sector center.
  double lift_arg(cplx wn) const;
};

ZPoint psi(const ChartMap& chart, const WPoint& w);
WPoint psi_inverse(const ChartMap& chart, const ZPoint& z);

/// Model cone metric omega_beta at z: diag(1, ..., 1, beta^2 |z_n|^{2 beta - 2}).
HermMat model_metric(const ZPoint& z, double beta);
HermMat model_metric_1d(double zn_abs, double beta);

/// Pullback psi^* omega_beta at w: must be the identity (flattening).
HermMat pullback_model_metric(const ChartMap& chart, const WPoint& w);

/// Conic Laplacian: sum_{k<n} d2/dz_k dzbar_k + beta^{-2} |z_n|^{2-2beta}
/// d2/dz_n dzbar_n, no 1/4 normalization, by finite differences.
GridField conic_laplacian_apply(const GridField& v, double beta);
CartesianField conic_laplacian_apply(const CartesianField& v, double beta);

}  // namespace conekit
