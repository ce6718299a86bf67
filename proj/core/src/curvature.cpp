#include "conekit/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace conekit {

MetricInW metric_in_w(const GridField& potential_w) {
  if (potential_w.chart.kind != ChartKind::W)
    throw std::invalid_argument("metric_in_w: potential must live in a w chart");
  MetricInW out;
  HermField h = complex_hessian(potential_w);
  double herm = 0.0, margin = 1e300;
  for (HermMat& m : h.m) {
    herm = std::max(herm, m.hermiticity_residual());
    m = m.symmetrized();
    margin = std::min(margin, m.min_eig());
  }
  out.hermiticity_residual = herm;
  out.positivity_margin = margin;
  if (!(margin > 0.0))
    throw std::runtime_error("metric_in_w: not positive definite at the sampled resolution (margin " +
                             std::to_string(margin) + ")");
  out.g = std::move(h);
  return out;
}

GridField CurvatureField::norm_field() const {
  GridField out;
  out.chart = chart;
  out.tr = tr;
  out.tan = tan;
  out.v.resize(norm.size());
  for (std::size_t i = 0; i < norm.size(); ++i) out.v[i] = norm[i];
  return out;
}

namespace {

GridField dw_hol(const GridField& f, int idx, int n) {
  // holomorphic derivative in coordinate idx (0 = tangential when n = 2)
  if (n == 2 && idx == 0) return d_tan_hol(f);
  return d_hol(f);
}

GridField dw_antihol(const GridField& f, int idx, int n) {
  if (n == 2 && idx == 0) return d_tan_antihol(f);
  return d_antihol(f);
}

}  // namespace

CurvatureField riemann(const HermField& g) {
  const int n = g.m.empty() ? 1 : g.m.front().n;
  const std::size_t npts = g.m.size();
  CurvatureField out;
  out.chart = g.chart;
  out.tr = g.tr;
  out.tan = g.tan;
  out.n = n;
  out.rm.assign(npts, {});
  out.norm.assign(npts, 0.0);

  // derivative fields of every metric component
  std::vector<GridField> comp(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) comp[i * n + j] = g.component(i, j);

  std::vector<std::vector<GridField>> d1(n * n), d1b(n * n), d2(n * n);
  for (int c = 0; c < n * n; ++c) {
    d1[c].resize(n);
    d1b[c].resize(n);
    d2[c].resize(n * n);
    for (int rho = 0; rho < n; ++rho) {
      d1[c][rho] = dw_hol(comp[c], rho, n);
      d1b[c][rho] = dw_antihol(comp[c], rho, n);
      for (int th = 0; th < n; ++th) d2[c][rho * n + th] = dw_antihol(d1[c][rho], th, n);
    }
  }

  double sym = 0.0, scale = 0.0;
  for (std::size_t p = 0; p < npts; ++p) {
    const HermMat h = g.m[p].inverse();
    auto& R = out.rm[p];
    for (int mu = 0; mu < n; ++mu)
      for (int nu = 0; nu < n; ++nu)
        for (int rho = 0; rho < n; ++rho)
          for (int th = 0; th < n; ++th) {
            cplx val = -d2[mu * n + nu][rho * n + th].v[p];
            for (int sg = 0; sg < n; ++sg)
              for (int ta = 0; ta < n; ++ta)
                val += h(ta, sg) * d1[mu * n + ta][rho].v[p] * d1b[sg * n + nu][th].v[p];
            R[((mu * n + nu) * n + rho) * n + th] = val;
          }
    // norm: contract every slot with the inverse metric
    double nrm2 = 0.0;
    for (int mu = 0; mu < n; ++mu)
      for (int nu = 0; nu < n; ++nu)
        for (int rho = 0; rho < n; ++rho)
          for (int th = 0; th < n; ++th)
            for (int al = 0; al < n; ++al)
              for (int be = 0; be < n; ++be)
                for (int ga = 0; ga < n; ++ga)
                  for (int de = 0; de < n; ++de) {
                    const cplx term = R[((mu * n + nu) * n + rho) * n + th] *
                                      std::conj(R[((al * n + be) * n + ga) * n + de]) *
                                      h(mu, al) * h(be, nu) * h(rho, ga) * h(de, th);
                    nrm2 += term.real();
                  }
    out.norm[p] = std::sqrt(std::max(0.0, nrm2));

    for (int mu = 0; mu < n; ++mu)
      for (int nu = 0; nu < n; ++nu)
        for (int rho = 0; rho < n; ++rho)
          for (int th = 0; th < n; ++th) {
            const cplx a = R[((mu * n + nu) * n + rho) * n + th];
            scale = std::max(scale, std::abs(a));
            sym = std::max(sym, std::abs(a - R[((rho * n + nu) * n + mu) * n + th]));
            sym = std::max(sym, std::abs(a - R[((mu * n + th) * n + rho) * n + nu]));
            sym = std::max(sym, std::abs(a - std::conj(R[((nu * n + mu) * n + th) * n + rho])));
          }
  }
  out.symmetry_residual = scale > 0.0 ? sym / scale : 0.0;
  return out;
}

namespace {

// w-chart potential of omega_0 + phi on the unfolded cone, point values
double cone_potential_value(const ModelGeometry& geom, const BackgroundResult& bg, double beta,
                            const std::function<double(cplx)>& phi_z, cplx w) {
  const cplx z = std::polar(std::pow(std::abs(w), 1.0 / beta), std::arg(w) / beta);
  const double s2 = geom.snorm2(0.0, z);
  double pot;
  if (s2 <= bg.glue.r_prime) {
    pot = geom.exp_part(0.0, z);  // u + v reduces to the bare exponential
  } else {
    pot = background_u_value(geom, bg.glue, bg.moll, 0.0, z) +
          geom.comparison_potential(0.0, z);
  }
  pot += geom.omega_potential(0.0, z) - geom.comparison_potential(0.0, z);
  pot += std::pow(s2, beta);
  if (phi_z) pot += phi_z(z);
  return pot;
}

GridField sample_cone_potential(const ModelGeometry& geom, const BackgroundResult& bg,
                                double beta, const std::function<double(cplx)>& phi_z,
                                double wmin, double wmax, int nrad, int nang) {
  const TransverseGrid tr =
      TransverseGrid::log_polar(wmin, wmax, nrad, nang, 0.0, 2.0 * M_PI * beta, true);
  return sample_field({ChartKind::W, 0, beta}, tr, [&](cplx w) {
    return cplx(cone_potential_value(geom, bg, beta, phi_z, w), 0.0);
  });
}

HolderReport trend_from_levels(const std::vector<std::pair<double, double>>& levels,
                               double alpha, double growth, double stable) {
  HolderReport rep;
  rep.alpha = alpha;
  rep.refinement_trend = levels;
  rep.seminorm_estimate = 0.0;
  for (const auto& [r, e] : levels) rep.seminorm_estimate = std::max(rep.seminorm_estimate, e);
  if (rep.seminorm_estimate < 1e-12) {
    rep.verdict = Verdict::stable;
    return rep;
  }
  bool all_grow = true, all_stable = true;
  for (std::size_t l = 1; l < levels.size(); ++l) {
    const double prev = std::max(levels[l - 1].second, 1e-300);
    const double ratio = levels[l].second / prev;
    all_grow = all_grow && ratio > growth;
    all_stable = all_stable && ratio <= stable;
  }
  rep.verdict = all_grow ? Verdict::diverging
                         : (all_stable ? Verdict::stable : Verdict::inconclusive);
  return rep;
}

double shell_pair_estimate(const GridField& f, double alpha, std::size_t budget,
                           std::uint64_t seed) {
  HolderOptions opt;
  opt.windows = 1;  // level trend is built across grids, not within one
  opt.pair_budget = budget;
  opt.seed = seed;
  return holder_seminorm(cloud_from(f), alpha, opt).seminorm_estimate;
}

}  // namespace

CurvatureTrendReport curvature_holder_trend(const ModelGeometry& geom,
                                            const BackgroundResult& bg, double beta,
                                            const std::function<double(cplx)>& phi_z,
                                            double alpha, const CurvatureTrendOptions& opt) {
  if (geom.n != 1)
    throw std::invalid_argument("curvature_holder_trend: transverse (n = 1) pipeline");
  CurvatureTrendReport rep;
  std::vector<std::pair<double, double>> t_rm, t_dg, t_d2g;
  for (int level = 0; level < opt.levels; ++level) {
    const int deep = opt.shell_hi + opt.shell_deepen * level;
    const double wmin = std::pow(2.0, -deep - 1);
    const double wmax = std::pow(2.0, -opt.shell_lo + 1);
    const int nrad = opt.base_nrad << level;
    const int nang = opt.base_nang << level;
    const GridField pot = sample_cone_potential(geom, bg, beta, phi_z, wmin, wmax, nrad, nang);
    const MetricInW m = metric_in_w(pot);
    const CurvatureField cf = riemann(m.g);

    // g is itself a derived field; drop the stencil transition rows
    GridField rmn = cf.norm_field().trim_radial(6, 6);
    GridField dg = d_hol(m.g.component(0, 0)).trim_radial(6, 6);
    GridField d2g = hess_mixed(m.g.component(0, 0)).trim_radial(6, 6);
    for (auto& z : dg.v) z = std::abs(z);
    for (auto& z : d2g.v) z = std::abs(z);

    const std::uint64_t seed = opt.seed + 1000u * level;
    t_rm.push_back({wmin, shell_pair_estimate(rmn, alpha, opt.pair_budget, seed)});
    t_dg.push_back({wmin, shell_pair_estimate(dg, alpha, opt.pair_budget, seed + 1)});
    t_d2g.push_back({wmin, shell_pair_estimate(d2g, alpha, opt.pair_budget, seed + 2)});
    if (level == opt.levels - 1)
      rep.rm_norm_max = *std::max_element(cf.norm.begin(), cf.norm.end());
  }
  rep.rm_norm = trend_from_levels(t_rm, alpha, opt.growth_threshold, opt.stable_threshold);
  rep.dg = trend_from_levels(t_dg, alpha, opt.growth_threshold, opt.stable_threshold);
  rep.d2g = trend_from_levels(t_d2g, alpha, opt.growth_threshold, opt.stable_threshold);
  rep.overall = rep.rm_norm.verdict;
  for (Verdict v : {rep.dg.verdict, rep.d2g.verdict}) {
    if (v == Verdict::diverging) rep.overall = Verdict::diverging;
    else if (v == Verdict::inconclusive && rep.overall == Verdict::stable)
      rep.overall = Verdict::inconclusive;
  }
  return rep;
}

MaResiduals differentiated_ma_residual(const ModelGeometry& geom, const BackgroundResult& bg,
                                       double beta, const std::function<double(cplx)>& phi_z,
                                       int nrad, int nang) {
  const double wmax = std::pow(0.6 * geom.transverse_cap, beta);
  const GridField p0 =
      sample_cone_potential(geom, bg, beta, nullptr, wmax * 1e-3, wmax, nrad, nang);
  const GridField pphi =
      sample_cone_potential(geom, bg, beta, phi_z, wmax * 1e-3, wmax, nrad, nang);

  const GridField g0 = hess_mixed(p0);
  const GridField gphi = hess_mixed(pphi);
  GridField f = g0.like();
  for (std::size_t i = 0; i < f.v.size(); ++i) {
    const double r0 = g0.v[i].real(), rp = gphi.v[i].real();
    if (!(r0 > 0.0 && rp > 0.0))
      throw std::runtime_error("differentiated_ma_residual: metric not positive");
    f.v[i] = std::log(rp / r0);
  }

  // first identity
  const GridField lhs1_num = hess_mixed(d_hol(pphi));
  const GridField d0 = hess_mixed(d_hol(p0));
  const GridField df = d_hol(f);
  GridField r1 = f.like();
  for (std::size_t i = 0; i < f.v.size(); ++i)
    r1.v[i] = lhs1_num.v[i] / gphi.v[i] - df.v[i] - d0.v[i] / g0.v[i];

  // dbar-differentiated identity with the quadratic term
  const GridField lhs2_num = hess_mixed(gphi);
  GridField delta0_h = f.like();
  for (std::size_t i = 0; i < f.v.size(); ++i) delta0_h.v[i] = d0.v[i] / g0.v[i];
  const GridField rhs2a = hess_mixed(f);
  const GridField rhs2b = d_antihol(delta0_h);
  const GridField dgp = d_hol(gphi);
  const GridField dgpb = d_antihol(gphi);
  GridField r2 = f.like();
  for (std::size_t i = 0; i < f.v.size(); ++i) {
    const cplx quad = dgpb.v[i] * dgp.v[i] / (gphi.v[i] * gphi.v[i]);
    r2.v[i] = lhs2_num.v[i] / gphi.v[i] - rhs2a.v[i] - rhs2b.v[i] - quad;
  }

  // interior band, away from one-sided stencils
  MaResiduals out;
  const int lo = 6, hi = nrad - 6;
  for (int ir = lo; ir < hi; ++ir)
    for (int ia = 0; ia < nang; ++ia) {
      out.first = std::max(out.first, std::abs(r1.at(0, ir, ia)));
      out.second = std::max(out.second, std::abs(r2.at(0, ir, ia)));
    }
  return out;
}

}  // namespace conekit
