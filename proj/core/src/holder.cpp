#include "conekit/holder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace conekit {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::stable: return "stable";
    case Verdict::diverging: return "diverging";
    default: return "inconclusive";
  }
}

namespace {

Verdict worst(Verdict a, Verdict b) {
  if (a == Verdict::diverging || b == Verdict::diverging) return Verdict::diverging;
  if (a == Verdict::inconclusive || b == Verdict::inconclusive) return Verdict::inconclusive;
  return Verdict::stable;
}

double pair_dist(const PointValue& p, const PointValue& q) {
  double s = 0.0;
  for (int i = 0; i < p.dim; ++i) s += sq(p.x[i] - q.x[i]);
  return std::sqrt(s);
}

}  // namespace

PointCloud cloud_from(const GridField& f) {
  PointCloud c;
  const int nr = f.tr.nrad(), na = f.tr.nang();
  const std::size_t nt = f.tan.count();
  c.pts.reserve(f.v.size());
  for (std::size_t it = 0; it < nt; ++it) {
    const cplx w1 = f.tan.point(it);
    for (int ir = 0; ir < nr; ++ir)
      for (int ia = 0; ia < na; ++ia) {
        PointValue p;
        const cplx zeta = f.tr.point(ir, ia);
        p.x[0] = zeta.real();
        p.x[1] = zeta.imag();
        p.dim = 2;
        if (!f.tan.trivial()) {
          p.x[2] = w1.real();
          p.x[3] = w1.imag();
          p.dim = 4;
        }
        p.value = f.at(it, ir, ia);
        p.rho = f.tr.radii[ir];
        c.pts.push_back(p);
      }
  }
  auto id = [&](std::size_t it, int ir, int ia) { return f.idx(it, ir, ia); };
  for (std::size_t it = 0; it < nt; ++it)
    for (int ir = 0; ir < nr; ++ir)
      for (int ia = 0; ia < na; ++ia) {
        if (ir + 1 < nr) c.neighbor_pairs.push_back({id(it, ir, ia), id(it, ir + 1, ia)});
        if (na > 1) {
          if (ia + 1 < na)
            c.neighbor_pairs.push_back({id(it, ir, ia), id(it, ir, ia + 1)});
          else if (f.tr.periodic)
            c.neighbor_pairs.push_back({id(it, ir, ia), id(it, ir, 0)});
        }
      }
  return c;
}

HolderReport holder_seminorm(const PointCloud& cloud, double alpha, const HolderOptions& opt) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("holder_seminorm: alpha in (0,1)");
  if (cloud.pts.size() < 2) throw std::invalid_argument("holder_seminorm: need >= 2 samples");

  HolderReport rep;
  rep.alpha = alpha;

  double rho_min = cloud.pts.front().rho, rho_max = rho_min;
  for (const auto& p : cloud.pts) {
    rho_min = std::min(rho_min, p.rho);
    rho_max = std::max(rho_max, p.rho);
  }
  const int W = (rho_max > rho_min * (1.0 + 1e-9)) ? opt.windows : 1;
  std::vector<double> cutoffs(W);
  for (int l = 0; l < W; ++l)
    cutoffs[l] = rho_max * std::pow(rho_min / rho_max, double(l + 1) / W);
  cutoffs.back() = rho_min;

  Rng rng(opt.seed);
  double best = 0.0;
  std::size_t pairs = 0;
  auto quotient = [&](std::size_t i, std::size_t j) {
    const double d = pair_dist(cloud.pts[i], cloud.pts[j]);
    if (d < 1e-300) return 0.0;
    const double dv = std::abs(cloud.pts[i].value - cloud.pts[j].value);
    if (dv <= std::max(cloud.pts[i].noise, cloud.pts[j].noise)) return 0.0;
    return dv / std::pow(d, alpha);
  };

  const std::size_t budget_per_window = std::max<std::size_t>(1, opt.pair_budget / W);
  for (int l = 0; l < W; ++l) {
    const double cut = cutoffs[l] * (1.0 - 1e-12);
    std::vector<std::size_t> in_window;
    for (std::size_t i = 0; i < cloud.pts.size(); ++i)
      if (cloud.pts[i].rho >= cut) in_window.push_back(i);
    if (in_window.size() >= 2) {
      const std::size_t m = in_window.size();
      if (m <= opt.exhaustive_limit && m * (m - 1) / 2 <= budget_per_window) {
        for (std::size_t a = 0; a < m; ++a)
          for (std::size_t b = a + 1; b < m; ++b) {
            best = std::max(best, quotient(in_window[a], in_window[b]));
            ++pairs;
          }
      } else {
        // grid-adjacent pairs first (dominant for rough fields), then random
        for (const auto& [i, j] : cloud.neighbor_pairs)
          if (cloud.pts[i].rho >= cut && cloud.pts[j].rho >= cut) {
            best = std::max(best, quotient(i, j));
            ++pairs;
          }
        for (std::size_t t = 0; t < budget_per_window; ++t) {
          const std::size_t i = in_window[rng.index(m)], j = in_window[rng.index(m)];
          if (i == j) continue;
          best = std::max(best, quotient(i, j));
          ++pairs;
        }
      }
    }
    rep.refinement_trend.push_back({cutoffs[l], best});
  }
  rep.seminorm_estimate = best;
  rep.pair_count = pairs;

  if (best < opt.zero_tol) {
    rep.verdict = Verdict::stable;
    return rep;
  }
  std::vector<double> ratios;
  for (std::size_t l = 1; l < rep.refinement_trend.size(); ++l) {
    const double prev = rep.refinement_trend[l - 1].second;
    ratios.push_back(prev > opt.zero_tol ? rep.refinement_trend[l].second / prev
                                         : (rep.refinement_trend[l].second > opt.zero_tol
                                                ? opt.growth_threshold * 2.0
                                                : 1.0));
  }
  if (ratios.empty()) {
    rep.verdict = Verdict::stable;
  } else if (std::all_of(ratios.begin(), ratios.end(),
                         [&](double r) { return r > opt.growth_threshold; })) {
    rep.verdict = Verdict::diverging;
  } else if (std::all_of(ratios.begin(), ratios.end(),
                         [&](double r) { return r <= opt.stable_threshold; })) {
    rep.verdict = Verdict::stable;
  } else {
    rep.verdict = Verdict::inconclusive;
  }
  return rep;
}

HolderReport holder_seminorm(const GridField& f, double alpha, std::size_t pair_budget) {
  HolderOptions opt;
  opt.pair_budget = pair_budget;
  return holder_seminorm(cloud_from(f), alpha, opt);
}

GridField pullback_field(const GridField& f, const ChartMap& chart) {
  if (f.chart.kind != ChartKind::Z)
    throw std::invalid_argument("pullback_field: input must live in the z chart");
  const double beta = chart.beta;
  const double c = chart.image_center(), hw = chart.image_halfwidth();
  // lifted grid angles falling in the chart's z-side arc
  std::vector<std::pair<double, int>> lifts;
  for (int ia = 0; ia < f.tr.nang(); ++ia)
    for (int m = 0; m <= 1; ++m) {
      const double a = f.tr.angles[ia] + 2.0 * M_PI * m;
      if (std::abs(a - c) <= hw + 1e-12) lifts.push_back({a, ia});
    }
  if (lifts.size() < 6) throw std::invalid_argument("pullback_field: angular grid too coarse");
  std::sort(lifts.begin(), lifts.end());
  const double step = f.tr.theta_step();
  for (std::size_t i = 1; i < lifts.size(); ++i)
    if (std::abs(lifts[i].first - lifts[i - 1].first - step) > 1e-9)
      throw std::runtime_error("pullback_field: non-contiguous angular subset");

  GridField out;
  out.chart = {ChartKind::W, chart.k, beta};
  out.tan = f.tan;
  out.tr.periodic = false;
  out.tr.radii.resize(f.tr.nrad());
  for (int ir = 0; ir < f.tr.nrad(); ++ir) out.tr.radii[ir] = std::pow(f.tr.radii[ir], beta);
  out.tr.angles.resize(lifts.size());
  for (std::size_t j = 0; j < lifts.size(); ++j) out.tr.angles[j] = beta * lifts[j].first;
  out.v.resize(f.tan.count() * out.tr.nrad() * out.tr.nang());
  for (std::size_t it = 0; it < f.tan.count(); ++it)
    for (int ir = 0; ir < f.tr.nrad(); ++ir)
      for (std::size_t j = 0; j < lifts.size(); ++j)
        out.at(it, ir, static_cast<int>(j)) = f.at(it, ir, lifts[j].second);
  return out;
}

CwReport cw_membership(const GridField& f, const ConeParams& params, const HolderOptions& opt) {
  CwReport rep;
  rep.overall = Verdict::stable;
  for (int k : chart_index_set(params.beta)) {
    const ChartMap chart(k, params.beta);
    const GridField fw = pullback_field(f, chart);
    HolderReport hr = holder_seminorm(cloud_from(fw), params.alpha, opt);
    rep.overall = worst(rep.overall, hr.verdict);
    rep.per_chart.push_back({k, std::move(hr)});
  }
  return rep;
}

MixedHessianReport dw_membership(const GridField& f, const ConeParams& params,
                                 const HolderOptions& opt) {
  MixedHessianReport rep;
  rep.overall = Verdict::stable;
  const bool has_tan = !f.tan.trivial();
  for (int k : chart_index_set(params.beta)) {
    const ChartMap chart(k, params.beta);
    GridField fw = pullback_field(f, chart);
    const std::string pre = "k" + std::to_string(k) + ":";

    // rounding wall: below this radius the 1/(4 rho^2) amplification of the
    // value round-off exceeds any Hessian information the samples carry
    {
      const double h = fw.tr.sigma_step();
      const double wall =
          50.0 * std::sqrt(2.2e-16 * std::max(1e-30, fw.max_abs())) / std::max(h, 1e-3);
      int lo = 0;
      while (lo < fw.tr.nrad() - 16 && fw.tr.radii[lo] < wall) ++lo;
      if (lo > 0) fw = fw.trim_radial(lo, 0);
    }

    std::vector<std::pair<std::string, GridField>> comps;
    comps.push_back({"nn", hess_mixed(fw)});
    comps.push_back({"nn_pure", hess_pure(fw)});
    if (has_tan) {
      comps.push_back({"11", hess_tan_mixed(fw)});
      comps.push_back({"1n", hess_cross(fw)});
      comps.push_back({"n1", hess_cross_t(fw)});
    }
    // common per-shell scale of the Hessian components; increments below the
    // stencil drift relative to it carry no information
    std::vector<double> shell_scale(fw.tr.nrad(), 0.0);
    for (const auto& [name, field] : comps) {
      const auto sm = field.shell_max_abs();
      for (int ir = 0; ir < fw.tr.nrad(); ++ir)
        shell_scale[ir] = std::max(shell_scale[ir], sm[ir]);
    }
    const double hs = fw.tr.sigma_step(), ht = fw.tr.theta_step();
    const double fd_rel = 30.0 * (std::pow(hs, 4) + std::pow(ht, 4));
    for (auto& [name, field] : comps) {
      field = field.trim_radial(3, 3).trim_angular(3, 3);
      PointCloud cloud = cloud_from(field);
      for (std::size_t it = 0; it < field.tan.count(); ++it)
        for (int ir = 0; ir < field.tr.nrad(); ++ir)
          for (int ia = 0; ia < field.tr.nang(); ++ia)
            cloud.pts[field.idx(it, ir, ia)].noise = fd_rel * shell_scale[ir + 3];
      HolderReport hr = holder_seminorm(cloud, params.alpha, opt);
      rep.overall = worst(rep.overall, hr.verdict);
      if (has_tan && (name == "1n" || name == "n1")) {
        double val = 0.0, res = 0.0;
        const auto limits = field.extrapolate_to_axis();
        for (const cplx& l : limits) val = std::max(val, std::abs(l));
        const auto sm = field.shell_max_abs();
        res = std::abs(sm[0] - val);
        rep.boundary_vanishing[pre + name] = {val, res};
        if (val > 1e-3) rep.overall = worst(rep.overall, Verdict::inconclusive);
      }
      rep.components[pre + name] = std::move(hr);
    }
  }
  return rep;
}

GridField phase_multiply(const GridField& f, PhaseDirection dir, double vanish_tol) {
  const auto limits = f.extrapolate_to_axis();
  double worst_limit = 0.0;
  for (const cplx& l : limits) worst_limit = std::max(worst_limit, std::abs(l));
  const double scale = std::max(f.max_abs(), 1e-30);
  if (worst_limit > vanish_tol * scale)
    throw std::invalid_argument("phase_multiply: field does not vanish at the divisor");
  GridField g = f.like();
  for (std::size_t it = 0; it < f.tan.count(); ++it)
    for (int ir = 0; ir < f.tr.nrad(); ++ir)
      for (int ia = 0; ia < f.tr.nang(); ++ia) {
        const cplx phase = std::polar(1.0, f.tr.angles[ia]);
        g.at(it, ir, ia) = f.at(it, ir, ia) * (dir == PhaseDirection::w ? phase : std::conj(phase));
      }
  return g;
}

PhaseBoundCheck phase_bound_check(const GridField& f, const GridField& g, double alpha,
                                  std::size_t pair_budget, std::uint64_t seed) {
  if (f.v.size() != g.v.size()) throw std::invalid_argument("phase_bound_check: mismatched grids");
  const PointCloud cf = cloud_from(f);
  const PointCloud cg = cloud_from(g);
  PhaseBoundCheck out;

  // vanishing quotients |f(q)| / rho_q^alpha are difference quotients
  // against the boundary point (w = 0) where f vanishes
  for (const auto& p : cf.pts)
    out.seminorm_f = std::max(out.seminorm_f, std::abs(p.value) / std::pow(p.rho, alpha));

  std::vector<std::pair<std::size_t, std::size_t>> pairs = cf.neighbor_pairs;
  Rng rng(seed);
  while (pairs.size() < pair_budget) {
    const std::size_t i = rng.index(cf.pts.size()), j = rng.index(cf.pts.size());
    if (i != j) pairs.push_back({i, j});
  }
  for (const auto& [i, j] : pairs) {
    const double d = pair_dist(cf.pts[i], cf.pts[j]);
    if (d < 1e-300) continue;
    out.seminorm_f =
        std::max(out.seminorm_f, std::abs(cf.pts[i].value - cf.pts[j].value) / std::pow(d, alpha));
  }
  for (const auto& [i, j] : pairs) {
    const double d = pair_dist(cf.pts[i], cf.pts[j]);
    if (d < 1e-300) continue;
    const double dg = std::abs(cg.pts[i].value - cg.pts[j].value);
    const double bound = 3.0 * out.seminorm_f * std::pow(d, alpha);
    ++out.pairs;
    const double ratio = bound > 0 ? dg / bound : (dg > 0 ? 2.0 : 0.0);
    out.worst_ratio = std::max(out.worst_ratio, ratio);
    if (dg > bound * (1.0 + 1e-9)) ++out.violations;
  }
  return out;
}

double phi_function(double r, double t, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("phi_function: alpha in (0,1)");
  const double denom = r * r - 2.0 * r * std::cos(t) + 1.0;
  if (denom <= 0.0) throw std::invalid_argument("phi_function: pole at r = 1, t = 0");
  return (2.0 - 2.0 * std::cos(t)) / std::pow(denom, alpha);
}

}  // namespace conekit
