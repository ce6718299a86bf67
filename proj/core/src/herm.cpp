#include "conekit/herm.hpp"

#include <algorithm>
#include <cmath>

namespace conekit {

HermMat HermMat::ident(int n) {
  HermMat m;
  m.n = n;
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

HermMat& HermMat::operator+=(const HermMat& o) {
  for (int i = 0; i < n * n; ++i) a[i] += o.a[i];
  return *this;
}
HermMat& HermMat::operator-=(const HermMat& o) {
  for (int i = 0; i < n * n; ++i) a[i] -= o.a[i];
  return *this;
}
HermMat& HermMat::operator*=(double s) {
  for (int i = 0; i < n * n; ++i) a[i] *= s;
  return *this;
}

double HermMat::hermiticity_residual() const {
  double r = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      r = std::max(r, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return r;
}

HermMat HermMat::symmetrized() const {
  HermMat m = *this;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m(i, j) = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
  return m;
}

double HermMat::det_real() const {
  if (n == 1) return a[0].real();
  return ((*this)(0, 0) * (*this)(1, 1) - (*this)(0, 1) * (*this)(1, 0)).real();
}

HermMat HermMat::inverse() const {
  HermMat m;
  m.n = n;
  const double d = det_real();
  if (std::abs(d) < 1e-300) throw std::runtime_error("HermMat: singular");
  if (n == 1) {
    m.a[0] = 1.0 / d;
    return m;
  }
  m(0, 0) = (*this)(1, 1) / d;
  m(1, 1) = (*this)(0, 0) / d;
  m(0, 1) = -(*this)(0, 1) / d;
  m(1, 0) = -(*this)(1, 0) / d;
  return m;
}

double HermMat::min_eig() const {
  if (n == 1) return a[0].real();
  const double tr = (*this)(0, 0).real() + (*this)(1, 1).real();
  const double d = det_real();
  const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * d));
  return 0.5 * (tr - disc);
}

double HermMat::max_eig() const {
  if (n == 1) return a[0].real();
  const double tr = (*this)(0, 0).real() + (*this)(1, 1).real();
  const double d = det_real();
  const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * d));
  return 0.5 * (tr + disc);
}

double wedge_coeff(const HermMat& A, const HermMat& B) {
  if (A.n == 1) return (A(0, 0) * B(0, 0)).real();
  return (A(0, 0) * B(1, 1) + A(1, 1) * B(0, 0) - A(0, 1) * B(1, 0) - A(1, 0) * B(0, 1)).real();
}

double top_power_coeff(const HermMat& A) {
  if (A.n == 1) return A(0, 0).real();
  return 2.0 * A.det_real();
}

}  // namespace conekit
