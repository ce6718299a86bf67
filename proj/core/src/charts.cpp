#include "conekit/charts.hpp"

#include <cmath>
#include <stdexcept>

namespace conekit {

std::vector<int> chart_index_set(double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("chart_index_set: beta in (0,1)");
  std::vector<int> out;
  for (int k = 1; k < 2.0 + 2.0 * beta; ++k) out.push_back(k);
  return out;
}

ChartMap::ChartMap(int k_, double beta_) : k(k_), beta(beta_) {
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("ChartMap: beta in (0,1)");
  const auto K = chart_index_set(beta);
  if (k < 1 || k > K.back()) throw std::invalid_argument("ChartMap: index outside K");
}

bool ChartMap::contains_arg(double arg_wn, double tol) const {
  return std::abs(arg_wn - sector_center()) <= sector_halfwidth() + tol;
}

double ChartMap::lift_arg(cplx wn) const {
  const double c = sector_center();
  double a = std::arg(wn) + branch_offset;
  // shift by whole turns until closest to the sector center
  a -= 2.0 * M_PI * std::round((a - c) / (2.0 * M_PI));
  return a;
}

ZPoint psi(const ChartMap& chart, const WPoint& w) {
  if (!(w.abs_n > 0.0)) throw std::invalid_argument("psi: w_n = 0");
  if (!chart.contains_arg(w.arg_n)) throw std::invalid_argument("psi: w outside sector");
  ZPoint z;
  z.tangential = w.tangential;
  z.abs_n = std::pow(w.abs_n, 1.0 / chart.beta);
  z.arg_n = w.arg_n / chart.beta;
  return z;
}

WPoint psi_inverse(const ChartMap& chart, const ZPoint& z) {
  if (!(z.abs_n > 0.0)) throw std::invalid_argument("psi_inverse: z_n = 0");
  WPoint w;
  w.tangential = z.tangential;
  w.abs_n = std::pow(z.abs_n, chart.beta);
  w.arg_n = z.arg_n * chart.beta;
  if (!chart.contains_arg(w.arg_n)) throw std::invalid_argument("psi_inverse: z outside image");
  return w;
}

HermMat model_metric_1d(double zn_abs, double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("model_metric: beta in (0,1)");
  if (!(zn_abs > 0.0)) throw std::invalid_argument("model_metric: z_n = 0 (coefficient singular)");
  return HermMat::diag1(beta * beta * std::pow(zn_abs, 2.0 * beta - 2.0));
}

HermMat model_metric(const ZPoint& z, double beta) {
  const HermMat trans = model_metric_1d(z.abs_n, beta);
  HermMat m = HermMat::ident(z.dim());
  m(z.dim() - 1, z.dim() - 1) = trans(0, 0);
  return m;
}

HermMat pullback_model_metric(const ChartMap& chart, const WPoint& w) {
  const ZPoint z = psi(chart, w);
  const HermMat g = model_metric(z, chart.beta);
  // J = diag(1, ..., 1, (1/beta) w_n^{1/beta - 1}); pullback = J^H g J
  const double e = 1.0 / chart.beta - 1.0;
  const cplx dzdw = (1.0 / chart.beta) * std::polar(std::pow(w.abs_n, e), w.arg_n * e);
  HermMat out = g;
  const int nl = z.dim() - 1;
  out(nl, nl) = g(nl, nl) * std::norm(dzdw);
  return out;
}

GridField conic_laplacian_apply(const GridField& v, double beta) {
  if (v.chart.kind != ChartKind::Z)
    throw std::invalid_argument("conic_laplacian_apply: field must live in a z chart");
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("conic_laplacian_apply: beta in (0,1)");
  GridField out = hess_mixed(v);
  for (std::size_t it = 0; it < v.tan.count(); ++it)
    for (int ir = 0; ir < v.tr.nrad(); ++ir) {
      const double w = std::pow(v.tr.radii[ir], 2.0 - 2.0 * beta) / sq(beta);
      for (int ia = 0; ia < v.tr.nang(); ++ia) out.at(it, ir, ia) *= w;
    }
  if (!v.tan.trivial()) {
    const GridField tanpart = hess_tan_mixed(v);
    for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] += tanpart.v[i];
  }
  return out;
}

CartesianField conic_laplacian_apply(const CartesianField& v, double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("conic_laplacian_apply: beta in (0,1)");
  CartesianField out = cart_hess_mixed(v);
  for (int iy = 0; iy < v.ny(); ++iy)
    for (int ix = 0; ix < v.nx(); ++ix) {
      const double r = std::abs(v.point(ix, iy));
      if (r == 0.0) throw std::invalid_argument("conic_laplacian_apply: sample touches z = 0");
      out.at(ix, iy) *= std::pow(r, 2.0 - 2.0 * beta) / sq(beta);
    }
  return out;
}

}  // namespace conekit
