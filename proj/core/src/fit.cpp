#include "conekit/fit.hpp"

#include <cmath>
#include <stdexcept>

#include "conekit/util.hpp"

namespace conekit {

LineFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("linear_fit: need >= 2 matched samples");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("linear_fit: degenerate abscissae");
  LineFit f;
  f.slope = (n * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / n;
  double ss_res = 0, ss_tot = 0;
  const double ybar = sy / n;
  for (std::size_t i = 0; i < x.size(); ++i) {
    ss_res += sq(f.slope * x[i] + f.intercept - y[i]);
    ss_tot += sq(y[i] - ybar);
  }
  f.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return f;
}

LineFit loglog_fit(const std::vector<double>& t, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] > 0.0 && y[i] > 0.0) {
      lx.push_back(std::log(t[i]));
      ly.push_back(std::log(y[i]));
    }
  }
  if (lx.size() < 2) {
    // everything vanished: report flat zero-decay with perfect fit
    LineFit f;
    f.r2 = 1.0;
    return f;
  }
  return linear_fit(lx, ly);
}

TwoBasisFit two_basis_fit(const std::vector<double>& b1, const std::vector<double>& b2,
                          const std::vector<double>& y) {
  if (b1.size() != y.size() || b2.size() != y.size() || y.size() < 2)
    throw std::invalid_argument("two_basis_fit: need >= 2 matched samples");
  double a11 = 0, a12 = 0, a22 = 0, r1 = 0, r2v = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    a11 += b1[i] * b1[i];
    a12 += b1[i] * b2[i];
    a22 += b2[i] * b2[i];
    r1 += b1[i] * y[i];
    r2v += b2[i] * y[i];
  }
  const double det = a11 * a22 - a12 * a12;
  if (std::abs(det) < 1e-300) throw std::invalid_argument("two_basis_fit: singular normal equations");
  TwoBasisFit f;
  f.c1 = (a22 * r1 - a12 * r2v) / det;
  f.c2 = (a11 * r2v - a12 * r1) / det;
  for (std::size_t i = 0; i < y.size(); ++i)
    f.max_residual = std::max(f.max_residual, std::abs(f.c1 * b1[i] + f.c2 * b2[i] - y[i]));
  return f;
}

}  // namespace conekit
