#pragma once
#include <string>
#include <vector>

#include "conekit/fit.hpp"
#include "conekit/geometry.hpp"
#include "conekit/glue.hpp"
#include "conekit/grid.hpp"
#include "conekit/holder.hpp"
#include "conekit/matfield.hpp"
#include "conekit/params.hpp"

namespace conekit {

/// tilde u = e^{-1/H0} - v sampled on a grid.
GridField tilde_u(const ModelGeometry& geom, const TransverseGrid& tr,
                  const TangentialGrid& tan);

/// q = 1/eta^2 + eta log |s|^2 (uses the rescaled section).
GridField q_function(const ModelGeometry& geom, double eta, const TransverseGrid& tr,
                     const TangentialGrid& tan);

/// Max residual of i ddbar q = -eta Theta over the grid, by finite differences.
double q_hessian_residual(const ModelGeometry& geom, double eta, const TransverseGrid& tr,
                          const TangentialGrid& tan);

struct GluingParameters {
  double eta = 0.0;
  double r = 0.0;        // |s|^2 level of the outer shell
  double r_prime = 0.0;  // |s|^2 level of the inner shell
  bool found = false;
  std::string diagnostics;
};

/// Smallest eta in the ladder whose separation radii exist on the grid:
/// q > tilde_u + eta + 1/eta near {|s|^2 = r}, tilde_u > q + eta + 1/eta on
/// {|s|^2 <= r'}, and omega + i ddbar q > 0 on {|s|^2 >= r'}.
GluingParameters choose_gluing_parameters(const ModelGeometry& geom,
                                          const GridField& tilde_u_field,
                                          const std::vector<double>& candidate_etas);

struct BackgroundOptions {
  double rho_min = 1e-6;
  int nrad = 320;
  int nang = 48;
  int ntan = 7;  // n = 2 base grid (per axis)
  std::vector<double> eta_ladder;         // default 1, 1/2, ..., 2^-10
  std::vector<double> beta_ladder = {0.4, 0.6, 0.75};
  std::vector<double> k_ladder = {1.0, 2.0, 4.0, 8.0};
  double rescale_target = 0.1353352832366127;  // e^{-2}
  int mollifier_nodes = 64;
  double locality_tol = 1e-10;
  BackgroundOptions();
};

struct BackgroundResult {
  ModelGeometry geom;  // with the final rescaling applied
  GluingParameters glue;
  MollifierSpec moll;
  GridField u;

  double u_variance_at_divisor = 0.0;
  double inner_exactness = 0.0;  // max |M_eta(tu, q) - tu| just inside r'
  double outer_exactness = 0.0;  // max |M_eta(tu, q) - q| just outside r
  double positivity_margin = 0.0;     // min eig of omega + i ddbar u on {|s|^2 >= r'}
  double near_divisor_floor = 0.0;    // global min eig (degenerates to 0 at D)
  double psh_chain_margin = 0.0;      // annulus eigenvalue check slack
  LineFit vanishing_fit;              // log volume ratio against 1/|s|^2
  std::vector<std::pair<double, double>> k_ladder_checks;  // (k, sup of |s|^{-2k} ratio near D)
  double conic_margin = 0.0;          // min eig of omega_0 in w charts, over the beta ladder
  double conic_band_lo = 0.0, conic_band_hi = 0.0;
  double beta_bound_max = 0.0;        // max over grid and ladder of beta |s|^{2 beta}
  double beta_bound_limit = 0.0;      // 1 / (-e log sup |s|^2)
};

/// Pointwise glued function (usable on grids deeper than the build grid;
/// locality makes deep points pure tilde u).
double background_u_value(const ModelGeometry& geom, const GluingParameters& glue,
                          const MollifierSpec& moll, cplx w1, cplx zn);

BackgroundResult build_background_u(ModelGeometry geom, const BackgroundOptions& opt = {});

/// omega + i ddbar u as a matrix field. Assembled from the exact splitting
/// omega = p^* omega|_D + i ddbar v, so the finite differences run on u + v,
/// which reduces to the bare exponential near the divisor (no 1 - 1
/// cancellation at the vanishing locus).
HermField omega_u_field(const ModelGeometry& geom, const GluingParameters& glue,
                        const GridField& u);

/// omega_0 = omega + i ddbar (u + |s|^{2 beta}), same assembly.
HermField omega0_field(const ModelGeometry& geom, const GluingParameters& glue,
                       const GridField& u, double beta);

struct VolumeExpansion {
  std::vector<GridField> a;   // a_0 .. a_{n-1} (shell-matched)
  GridField F;
  double k = 0.0;
  double identity_residual = 0.0;   // i ddbar |s|^{2 beta} identity, relative
  double ratio_residual = 0.0;      // eqratiovol match, relative
  double a0_min_near_divisor = 0.0;
  double a0_formula_mismatch = 0.0; // shell-matched vs closed-form a_0 near D
};
VolumeExpansion volume_expansion_coeffs(const ModelGeometry& geom, const BackgroundResult& bg,
                                        double beta);

/// log(|s|^{2-2 beta} omega_0^n / omega^n); throws if the ratio is not positive.
GridField log_volume_ratio(const ModelGeometry& geom, const BackgroundResult& bg, double beta);

enum class RicciMode { omega_class, lambda };
struct RicciPotential {
  GridField F;
  double identity_residual = 0.0;  // lambda mode, smooth-locus identity (relative)
};
/// omega_class: F = f_input - log ratio. lambda: F = f_input - lambda (u + |s|^{2 beta})
/// - log ratio, with the smooth-locus Ricci identity checked by finite differences.
RicciPotential ricci_potential(const ModelGeometry& geom, const BackgroundResult& bg, double beta,
                               RicciMode mode, const GridField& f_input, double lambda = 0.0);

}  // namespace conekit
