#pragma once
#include <map>
#include <string>
#include <vector>

#include "conekit/charts.hpp"
#include "conekit/grid.hpp"
#include "conekit/params.hpp"

namespace conekit {

enum class Verdict { stable, diverging, inconclusive };
const char* to_string(Verdict v);

/// Sampled-pair lower bound of a Hoelder seminorm plus its refinement trend.
/// Estimates are maxima over pair quotients, so they can only grow when pairs
/// are added; the trend levels are nested radial windows of the sample cloud
/// (each level admits points closer to the singular locus).
struct HolderReport {
  double alpha = 0.0;
  double seminorm_estimate = 0.0;
  std::size_t pair_count = 0;
  std::vector<std::pair<double, double>> refinement_trend;  // (window min radius, estimate)
  Verdict verdict = Verdict::inconclusive;
};

struct PointValue {
  double x[4];  // flattened coordinates (re/im transverse [+ re/im tangential])
  int dim = 2;
  cplx value{0, 0};
  double rho = 0.0;    // distance to the singular locus, used for windows
  double noise = 0.0;  // pairs with |dv| below this carry no information
};

struct PointCloud {
  std::vector<PointValue> pts;
  std::vector<std::pair<std::size_t, std::size_t>> neighbor_pairs;  // grid adjacency
};

PointCloud cloud_from(const GridField& f);

struct HolderOptions {
  std::size_t pair_budget = 200000;
  std::size_t exhaustive_limit = 1500;  // full pair scan below this many points
  int windows = 3;
  double growth_threshold = 1.5;   // diverging: estimate grows by more, twice
  double stable_threshold = 1.15;  // stable: never grows by more
  double zero_tol = 1e-12;
  std::uint64_t seed = 12345;
};

HolderReport holder_seminorm(const PointCloud& cloud, double alpha, const HolderOptions& opt = {});
HolderReport holder_seminorm(const GridField& f, double alpha, std::size_t pair_budget);

/// Membership evidence for C_w^{0,alpha}: Hoelder trend of the pullback
/// through every chart in K.
struct CwReport {
  std::vector<std::pair<int, HolderReport>> per_chart;
  Verdict overall = Verdict::inconclusive;
};
CwReport cw_membership(const GridField& f, const ConeParams& params,
                       const HolderOptions& opt = {});

/// Membership evidence for D_w^{0,alpha}: Hoelder trends of the pulled-back
/// complex Hessian components f_ij, the pure transverse second derivative,
/// and boundary vanishing of the mixed transverse components.
struct MixedHessianReport {
  // key: "k<chart>:<component>", components "11","1n","n1","nn","nn_pure"
  std::map<std::string, HolderReport> components;
  // extrapolated |f_in|, |f_nj| at w_n = 0 with residuals, per chart
  std::map<std::string, std::pair<double, double>> boundary_vanishing;
  Verdict overall = Verdict::inconclusive;
};
MixedHessianReport dw_membership(const GridField& f, const ConeParams& params,
                                 const HolderOptions& opt = {});

/// Pullback of a z-chart field through chart k. Samples are reindexed, never
/// interpolated: the w grid is the exact image of the z grid.
GridField pullback_field(const GridField& f, const ChartMap& chart);

/// g = f * zeta/|zeta| (direction w) or f * conj(zeta)/|zeta| (conj_w).
/// Requires f(.,0) = 0 within tolerance (checked by extrapolation).
enum class PhaseDirection { w, conj_w };
GridField phase_multiply(const GridField& f, PhaseDirection dir, double vanish_tol = 1e-6);

/// Pairwise check of the phase lemma bound |g(p)-g(q)| <= 3 S_f |p-q|^alpha,
/// with S_f the sampled seminorm of f including the vanishing quotients
/// |f(q)| / rho_q^alpha.
struct PhaseBoundCheck {
  double seminorm_f = 0.0;
  std::size_t pairs = 0;
  std::size_t violations = 0;
  double worst_ratio = 0.0;  // max |dg| / (3 S_f d^alpha)
};
PhaseBoundCheck phase_bound_check(const GridField& f, const GridField& g, double alpha,
                                  std::size_t pair_budget, std::uint64_t seed);

/// phi(r e^{it}) = (2 - 2 cos t) / (r^2 - 2 r cos t + 1)^alpha.
double phi_function(double r, double t, double alpha);

}  // namespace conekit
