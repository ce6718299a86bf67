#pragma once
#include <array>
#include <stdexcept>

#include "conekit/util.hpp"

namespace conekit {

/// Small Hermitian matrix (n = 1 or 2), row-major. Used for metric
/// coefficients g_{mu nubar} and curvature forms.
struct HermMat {
  int n = 1;
  std::array<cplx, 4> a{};  // n x n entries, row-major

  static HermMat ident(int n);
  static HermMat diag1(double g) {
    HermMat m;
    m.n = 1;
    m.a[0] = g;
    return m;
  }

  cplx& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  const cplx& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

  HermMat& operator+=(const HermMat& o);
  HermMat& operator-=(const HermMat& o);
  HermMat& operator*=(double s);
  friend HermMat operator+(HermMat l, const HermMat& r) { return l += r; }
  friend HermMat operator-(HermMat l, const HermMat& r) { return l -= r; }
  friend HermMat operator*(double s, HermMat m) { return m *= s; }

  /// Largest deviation from conjugate symmetry.
  double hermiticity_residual() const;
  /// Symmetrize: (A + A^H)/2.
  HermMat symmetrized() const;

  double det_real() const;  // determinant (real for Hermitian input)
  HermMat inverse() const;
  double min_eig() const;
  double max_eig() const;
};

/// Coefficient of A wedge B against the Euclidean volume form
/// (i dw1 dw1bar)(i dw2 dw2bar); for n = 1 just A11 (top power of a single
/// (1,1)-form). For n = 2: A11 B22 + A22 B11 - A12 B21 - A21 B12.
double wedge_coeff(const HermMat& A, const HermMat& B);

/// Coefficient of the top power: omega^n / (n-form normalization), i.e. the
/// determinant for n = 1, 2 (ratios of such coefficients are volume ratios).
double top_power_coeff(const HermMat& A);

}  // namespace conekit
