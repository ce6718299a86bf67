#pragma once
#include <string>

#include "conekit/grid.hpp"
#include "conekit/herm.hpp"

namespace conekit {

/// Built-in model data (M, D, L, h, omega, s) reduced to explicit chart
/// evaluators. Two instances:
///   disc_n1:        unit disc, D = {0}, s proportional to z, h flat or of
///                   Fubini-Study type (curvature exponent kappa);
///   line_bundle_p1: neighborhood of the zero section of O(-kb) over P^1 on
///                   the standard base chart, D = zero section, s = fiber
///                   coordinate. Rotation invariant in the fiber.
/// Conventions: the transverse coordinate is the last one; the tangential
/// coordinate (n = 2) comes first. All evaluators take z-chart points.
struct ModelGeometry {
  enum class Kind { disc_n1, line_bundle_p1 };
  Kind kind = Kind::disc_n1;
  std::string name;
  int n = 1;
  int kb = 1;          // bundle degree is -kb (line_bundle_p1)
  double kappa = 0.0;  // h curvature exponent (disc_n1); 0 = flat metric
  double cs2 = 1.0;    // rescaling: |s|^2 = cs2 * H0
  double transverse_cap = 1.0;   // outer |z_n| of the neighborhood
  double tangential_half = 0.75; // base patch half-width (n = 2)
  bool rotation_invariant = true;

  static ModelGeometry disc(double kappa = 0.0);
  static ModelGeometry p1_bundle(int kb);
  static ModelGeometry by_name(const std::string& name);  // "disc_n1" | "line_bundle_p1"

  /// Unscaled squared norm of the defining section (the fiber-norm function
  /// the exponential construction runs on; independent of the rescaling).
  double H0(cplx w1, cplx zn) const;
  double snorm2(cplx w1, cplx zn) const { return cs2 * H0(w1, zn); }
  double sup_s2() const;  // over the sampled neighborhood

  HermMat omega(cplx w1, cplx zn) const;  // ambient Kaehler form coefficients
  HermMat theta(cplx w1, cplx zn) const;  // curvature of the Chern connection of (L, h)

  /// v with (Upsilon^{-1})^* omega = p^* omega|_D + i ddbar v and v|_D = 0.
  double comparison_potential(cplx w1, cplx zn) const;
  /// Local potential of omega on the chart.
  double omega_potential(cplx w1, cplx zn) const;
  /// tilde u = e^{-1/H0} - v, with the exponential flushed to zero below the
  /// double-precision floor (H0 < 1/745).
  double tilde_u_value(cplx w1, cplx zn) const;
  /// The bare exponential e^{-1/H0}; omega + i ddbar tilde_u equals
  /// p^* omega|_D + i ddbar of this exactly, which is what the vanishing
  /// checks difference (avoids the 1 - 1 cancellation at the divisor).
  double exp_part(cplx w1, cplx zn) const;

  /// Fubini-Study part of omega that survives on D (p^* omega|_D); zero for
  /// the disc (D is a point).
  HermMat omega_on_divisor(cplx w1) const;

  void rescale_to(double target_sup_s2);  // adjusts cs2

  TransverseGrid make_transverse(double rho_min, int nrad, int nang) const;
  TangentialGrid make_tangential(int npts) const;  // trivial for n = 1
};

}  // namespace conekit
