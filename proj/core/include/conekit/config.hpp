#pragma once
#include <cstdint>
#include <string>
#include <vector>

namespace conekit {

/// Single key = value configuration file; every tolerance used by the
/// verification suite appears here under its check's name.
struct ExperimentConfig {
  std::string name = "default";
  std::uint64_t seed = 20240817;
  std::string output_dir = "out";
  std::string geometry = "disc_n1";

  std::vector<double> alphas = {0.3};
  std::vector<double> betas = {0.4, 0.6, 0.75};
  std::vector<double> alpha_primes = {0.2, 0.3};
  std::vector<int> grid_levels = {64, 128, 256};  // strictly increasing

  // grid defaults
  double rho_min = 1e-4;
  double membership_rho_min = 1e-24;
  double background_rho_min = 1e-6;
  int background_nrad = 320;
  int background_nang = 48;
  int background_ntan = 7;

  // tolerances, named by check
  double flattening_tol = 1e-12;
  double phi_upper = 4.0;
  double phi_near = 3.99;
  double phase_factor = 3.0;
  double locality_tol = 1e-10;
  double grad_box_tol = 1e-9;
  double grad_sum_tol = 1e-8;
  double grad_fd_tol = 1e-6;
  double convexity_tol = 1e-9;
  double solver_order_min = 1.8;
  double solver_residual_tol = 1e-3;
  double a_recovery_rel = 0.01;
  double decay_fit_tol = 0.05;
  double u_variance_tol = 1e-10;
  double vanishing_r2_min = 0.99;
  double exactness_tol = 1e-10;
  double truncation_cstencil = 1.0;  // truncation estimate = C h^{order-2}
  double rm_flat_tol = 1e-8;
  double holder_growth = 1.5;
  double holder_stable = 1.15;
  std::size_t pair_budget = 200000;

  bool negative_controls = true;

  static ExperimentConfig load(const std::string& path);
  void save(const std::string& path) const;
  /// grid-spacing based tolerance for second-derivative checks
  double truncation_estimate(double h) const { return truncation_cstencil * h * h; }
};

}  // namespace conekit
