#pragma once
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "conekit/util.hpp"

namespace conekit {

enum class ChartKind { Z, W };

struct ChartTag {
  ChartKind kind = ChartKind::Z;
  int index = 0;     // chart index k for W charts; 0 for the plain z chart
  double beta = 1.0; // cone parameter the chart belongs to
};

/// Polar-product grid in the transverse coordinate: log-spaced radii
/// (uniform in sigma = log rho) times uniform angles. The singular locus
/// rho = 0 is never sampled.
struct TransverseGrid {
  std::vector<double> radii;   // ascending, all > 0
  std::vector<double> angles;  // ascending, uniform
  bool periodic = true;        // full circle (wraparound stencils)

  int nrad() const { return static_cast<int>(radii.size()); }
  int nang() const { return static_cast<int>(angles.size()); }
  double sigma_step() const;
  double theta_step() const;
  cplx point(int ir, int ia) const;

  static TransverseGrid log_polar(double rho_min, double rho_max, int nrad, int nang,
                                  double angle0, double angle1, bool periodic);
  // full circle [0, 2*pi)
  static TransverseGrid disc(double rho_min, double rho_max, int nrad, int nang);
  // radial ray (nang = 1), for one-dimensional sample sets
  static TransverseGrid ray(double rho_min, double rho_max, int nrad);
};

/// Cartesian grid for the tangential coordinate w_1 = x + i y (n = 2).
/// Empty axes mean n = 1.
struct TangentialGrid {
  std::vector<double> xs, ys;

  bool trivial() const { return xs.empty(); }
  int nx() const { return static_cast<int>(xs.size()); }
  int ny() const { return static_cast<int>(ys.size()); }
  std::size_t count() const { return trivial() ? 1 : xs.size() * ys.size(); }
  cplx point(std::size_t it) const;

  static TangentialGrid square(double half_width, int n);
};

/// Sampled complex scalar field on a chart grid. Layout: tangential-major,
/// then radius, then angle.
struct GridField {
  ChartTag chart;
  TransverseGrid tr;
  TangentialGrid tan;
  std::vector<cplx> v;

  std::size_t size() const { return v.size(); }
  std::size_t idx(std::size_t it, int ir, int ia) const {
    return (it * tr.nrad() + ir) * tr.nang() + ia;
  }
  cplx& at(std::size_t it, int ir, int ia) { return v[idx(it, ir, ia)]; }
  const cplx& at(std::size_t it, int ir, int ia) const { return v[idx(it, ir, ia)]; }

  GridField like() const;  // same geometry, zeroed samples
  double max_abs() const;

  /// Max of |v| per radius shell (over angles and tangential points).
  std::vector<double> shell_max_abs() const;
  /// Mean of v per radius shell.
  std::vector<cplx> shell_mean() const;

  /// Aitken extrapolation toward rho -> 0 along each (tangential, angle) ray
  /// using the innermost `depth` radii. Returns per-ray limits.
  std::vector<cplx> extrapolate_to_axis(int depth = 5) const;

  /// Drop radial rows at both ends (one-sided stencil transition region of
  /// derived fields must not feed pair quotients at tiny distances).
  GridField trim_radial(int lo, int hi) const;
  /// Same for the angular edges of non-periodic (sector) grids; no-op when
  /// the grid is periodic.
  GridField trim_angular(int lo, int hi) const;

  // ---- serialization: self-describing CSV, or header + raw binary pair ----
  void save_csv(const std::string& path) const;
  static GridField load_csv(const std::string& path);
  void save_binary_pair(const std::string& stem) const;  // stem.gridh + stem.gridb
  static GridField load_binary_pair(const std::string& stem);
};

/// Build a field by sampling fn(w1, zeta) where zeta is the transverse
/// coordinate of the chart and w1 the tangential one (0 when n = 1).
GridField sample_field(const ChartTag& chart, const TransverseGrid& tr,
                       const TangentialGrid& tan,
                       const std::function<cplx(cplx, cplx)>& fn);
GridField sample_field(const ChartTag& chart, const TransverseGrid& tr,
                       const std::function<cplx(cplx)>& fn);

/// Rectangular patch with uniform spacing, away from the singular locus.
struct CartesianField {
  std::vector<double> xs, ys;  // uniform axes
  std::vector<cplx> v;         // row-major: iy * nx + ix
  int nx() const { return static_cast<int>(xs.size()); }
  int ny() const { return static_cast<int>(ys.size()); }
  cplx& at(int ix, int iy) { return v[static_cast<std::size_t>(iy) * xs.size() + ix]; }
  const cplx& at(int ix, int iy) const { return v[static_cast<std::size_t>(iy) * xs.size() + ix]; }
  cplx point(int ix, int iy) const { return {xs[ix], ys[iy]}; }
};

CartesianField sample_cartesian(double x0, double x1, int nx, double y0, double y1, int ny,
                                const std::function<cplx(cplx)>& fn);

}  // namespace conekit
