#pragma once
#include <vector>

#include "conekit/fit.hpp"
#include "conekit/grid.hpp"
#include "conekit/params.hpp"

namespace conekit {

struct PoissonOptions {
  int max_outer = 200;      // fixed-point iterations coupling the tangential part
  double damping = 0.5;
  double outer_tol = 1e-11;
};

/// Dirichlet problem for the conic Laplacian on the punctured disc (z chart):
/// Delta_beta v = f, v = boundary at the outer radius. boundary is indexed
/// [tangential][angle]. Fourier in the angle, second-order differences on the
/// log radius, direct banded solves per mode; for n = 2 the tangential
/// Laplacian is folded into the right-hand side by damped fixed point.
GridField solve_poisson(const GridField& f, const std::vector<cplx>& boundary, double beta,
                        const PoissonOptions& opt = {});

/// Euclidean Poisson problem d2v/dw dwbar = f on an unfolded cone
/// (w-chart grid, periodic angle of total length 2 pi beta).
GridField solve_poisson_euclidean(const GridField& f, const std::vector<cplx>& boundary);

/// Reindex a full-circle z-chart field to the unfolded cone (|w| = |z|^beta,
/// arg w = beta arg z). Exact: samples are moved, not interpolated.
GridField unfold_to_cone(const GridField& f, double beta);

/// PDE residual of a candidate solution, by the fourth-order stencils
/// (independent of the solver's own discretization).
GridField poisson_residual(const GridField& v, const GridField& f, double beta);

/// h(z) = |z|^{2 beta - 2} (ftilde(|z|^{beta-1} z) - ftilde(0)) with the
/// companion envelope fit |h| <= C |z|^{2 beta - 2 + alpha' beta}.
struct ConeResidual {
  GridField h;
  cplx f0;            // extrapolated ftilde(0)
  double f0_residual;
  LineFit envelope;   // log-log fit of shell max |h| against |z|
};
ConeResidual cone_residual(const GridField& f_tilde, double beta);

/// v = a |z|^{2 beta} + b z + V with the dichotomy on b.
struct ExpansionResult {
  cplx a{0, 0};
  cplx b{0, 0};
  GridField V;
  double fitted_decay_exponent = 0.0;
  double fitted_constant = 0.0;
  double p_bar = 0.0;  // 2 / (2 - 2 beta - alpha' beta)
  bool b_branch_active = false;
};
ExpansionResult extract_expansion(const GridField& v, const GridField& f_tilde,
                                  const ConeParams& params, double alpha_prime);

/// Decay of the remainder: log-log fits of the two weighted second-derivative
/// envelopes over a dyadic radius ladder.
struct DecayCheck {
  LineFit second_derivative;   // |z|^{2-2b} |V_zz|
  LineFit conic_derivative;    // |z|^{2-2b} |V_zz + (1-b)/z V_z|
  bool pass = false;           // both slopes >= alpha' beta - fit_tol
  double target_slope = 0.0;
};
DecayCheck check_decay(const GridField& V, const ConeParams& params, double alpha_prime,
                       int ladder_lo = 3, int ladder_hi = 12, double fit_tol = 0.05);

/// |dF/dz| fitted against C1 |z|^{2 beta - 1 + alpha' beta} + C2; for
/// beta >= 1/2 additionally the claim |z|^{1-2 beta} |dF/dz - b| <= C |z|^{alpha' beta}.
struct FirstDerivativeBound {
  TwoBasisFit envelope;
  cplx b{0, 0};
  LineFit claim;     // only meaningful when beta >= 1/2
  bool claim_checked = false;
  bool claim_pass = false;
};
FirstDerivativeBound first_derivative_bound(const GridField& F, const ConeParams& params,
                                            double alpha_prime, double fit_tol = 0.05);

}  // namespace conekit
