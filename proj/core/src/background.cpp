#include "conekit/background.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace conekit {

namespace {

GridField sample_on(const TransverseGrid& tr, const TangentialGrid& tan,
                    const std::function<double(cplx, cplx)>& fn) {
  return sample_field({ChartKind::Z, 0, 1.0}, tr, tan,
                      [&fn](cplx w1, cplx zn) { return cplx(fn(w1, zn), 0.0); });
}

double q_value(const ModelGeometry& geom, double eta, cplx w1, cplx zn) {
  return 1.0 / sq(eta) + eta * std::log(geom.snorm2(w1, zn));
}

}  // namespace

GridField tilde_u(const ModelGeometry& geom, const TransverseGrid& tr,
                  const TangentialGrid& tan) {
  return sample_on(tr, tan,
                   [&geom](cplx w1, cplx zn) { return geom.tilde_u_value(w1, zn); });
}

GridField q_function(const ModelGeometry& geom, double eta, const TransverseGrid& tr,
                     const TangentialGrid& tan) {
  if (!(eta > 0.0)) throw std::invalid_argument("q_function: eta > 0");
  return sample_on(tr, tan,
                   [&](cplx w1, cplx zn) { return q_value(geom, eta, w1, zn); });
}

double q_hessian_residual(const ModelGeometry& geom, double eta, const TransverseGrid& tr,
                          const TangentialGrid& tan) {
  const GridField q = q_function(geom, eta, tr, tan);
  const HermField hq = complex_hessian(q);
  double res = 0.0;
  const int lo = tr.nrad() / 8, hi = tr.nrad() - 2;  // interior band
  for (std::size_t it = 0; it < q.tan.count(); ++it) {
    const cplx w1 = q.tan.point(it);
    for (int ir = lo; ir < hi; ++ir)
      for (int ia = 0; ia < tr.nang(); ++ia) {
        const HermMat target = -eta * geom.theta(w1, tr.point(ir, ia));
        const HermMat diff = hq.at(it, ir, ia) - target;
        for (int c = 0; c < diff.n * diff.n; ++c) res = std::max(res, std::abs(diff.a[c]));
      }
  }
  return res;
}

GluingParameters choose_gluing_parameters(const ModelGeometry& geom,
                                          const GridField& tu,
                                          const std::vector<double>& candidate_etas) {
  struct Sample {
    double s2, tu, mineig_omega;
    HermMat theta;
  };
  std::vector<Sample> samples;
  samples.reserve(tu.v.size());
  double s2_min = 1e300, s2_max = 0.0;
  for (std::size_t it = 0; it < tu.tan.count(); ++it) {
    const cplx w1 = tu.tan.point(it);
    for (int ir = 0; ir < tu.tr.nrad(); ++ir)
      for (int ia = 0; ia < tu.tr.nang(); ia += (geom.rotation_invariant ? tu.tr.nang() : 1)) {
        const cplx zn = tu.tr.point(ir, ia);
        Sample s;
        s.s2 = geom.snorm2(w1, zn);
        s.tu = tu.at(it, ir, ia).real();
        s.theta = geom.theta(w1, zn);
        s.mineig_omega = geom.omega(w1, zn).min_eig();
        samples.push_back(s);
        s2_min = std::min(s2_min, s.s2);
        s2_max = std::max(s2_max, s.s2);
      }
  }

  const int nlevels = 160;
  std::vector<double> levels = logspace(s2_min * 2.0, s2_max / 2.0, nlevels);
  const double lam = std::sqrt(levels[1] / levels[0]) * (levels[1] / levels[0]);

  GluingParameters best;
  std::ostringstream diag;
  for (double eta : candidate_etas) {
    const double gap = eta + 1.0 / eta;
    auto q_of = [&](double s2) { return 1.0 / sq(eta) + eta * std::log(s2); };

    // outer level: q dominates on the band around it
    double r = 0.0;
    for (int li = nlevels - 1; li >= 0; --li) {
      bool ok = false, seen = false;
      for (const Sample& s : samples) {
        if (s.s2 < levels[li] / lam || s.s2 > levels[li] * lam) continue;
        seen = true;
        if (!(q_of(s.s2) > s.tu + gap)) {
          ok = false;
          break;
        }
        ok = true;
      }
      if (seen && ok && levels[li] <= s2_max / 2.0) {
        r = levels[li];
        break;
      }
    }
    if (r == 0.0) {
      diag << "eta=" << eta << ": no outer level; ";
      continue;
    }
    // inner level: tilde u dominates everywhere below it
    double rp = 0.0;
    for (int li = nlevels - 1; li >= 0; --li) {
      if (!(levels[li] * lam * lam * 8.0 < r)) continue;
      bool ok = true, below = false;
      for (const Sample& s : samples) {
        if (s.s2 > levels[li] * lam) continue;
        if (s.s2 < levels[li] / lam) below = true;
        if (!(s.tu > q_of(s.s2) + gap)) {
          ok = false;
          break;
        }
      }
      if (ok && below) {
        rp = levels[li];
        break;
      }
    }
    if (rp == 0.0) {
      diag << "eta=" << eta << ": no inner level on grid; ";
      continue;
    }
    // omega + i ddbar q = omega - eta Theta positive outside the inner region
    double margin = 1e300;
    for (const Sample& s : samples) {
      if (s.s2 < rp / lam) continue;
      HermMat m = s.theta;
      m *= -eta;
      // min eig of omega - eta Theta bounded below by mineig(omega) + mineig(-eta Theta)
      margin = std::min(margin, s.mineig_omega + m.min_eig());
    }
    if (!(margin > 0.0)) {
      diag << "eta=" << eta << ": q not plurisubharmonic (margin " << margin << "); ";
      continue;
    }
    best.eta = eta;
    best.r = r;
    best.r_prime = rp;
    best.found = true;  // keep scanning: ladder is descending, smaller eta wins
  }
  if (!best.found) {
    best.diagnostics = "no admissible (eta, r, r') in the search ranges: " + diag.str();
    throw std::runtime_error("choose_gluing_parameters: " + best.diagnostics);
  }
  best.diagnostics = diag.str();
  return best;
}

BackgroundOptions::BackgroundOptions() {
  for (int j = 0; j <= 10; ++j) eta_ladder.push_back(std::pow(0.5, j));
}

double background_u_value(const ModelGeometry& geom, const GluingParameters& glue,
                          const MollifierSpec& moll, cplx w1, cplx zn) {
  const double s2 = geom.snorm2(w1, zn);
  const double tu = geom.tilde_u_value(w1, zn);
  if (s2 <= glue.r_prime) return tu;
  const double q = 1.0 / sq(glue.eta) + glue.eta * std::log(s2);
  if (s2 >= glue.r) return q;
  return m_eta(tu, q, moll);
}

namespace {

// u + v sampled so that the tilde-u branch reduces to the bare exponential
// (u + v = e^{-1/H0} exactly there); FD of this field gives omega + i ddbar u
// minus the divisor part without cancellation at the vanishing locus.
GridField u_plus_v_field(const ModelGeometry& geom, const GluingParameters& glue,
                         const MollifierSpec& moll, const TransverseGrid& tr,
                         const TangentialGrid& tan) {
  GridField out = sample_field({ChartKind::Z, 0, 1.0}, tr, tan, [&](cplx w1, cplx zn) {
    const double s2 = geom.snorm2(w1, zn);
    if (s2 <= glue.r_prime) return cplx(geom.exp_part(w1, zn), 0.0);
    return cplx(background_u_value(geom, glue, moll, w1, zn) +
                    geom.comparison_potential(w1, zn),
                0.0);
  });
  return out;
}

HermField add_divisor_part(const ModelGeometry& geom, HermField h) {
  if (geom.kind == ModelGeometry::Kind::disc_n1) return h;
  for (std::size_t it = 0; it < h.tan.count(); ++it) {
    const HermMat fs = geom.omega_on_divisor(h.tan.point(it));
    for (int ir = 0; ir < h.tr.nrad(); ++ir)
      for (int ia = 0; ia < h.tr.nang(); ++ia) h.at(it, ir, ia) += fs;
  }
  return h;
}

GridField snorm2_field(const ModelGeometry& geom, const TransverseGrid& tr,
                       const TangentialGrid& tan) {
  return sample_on(tr, tan,
                   [&](cplx w1, cplx zn) { return geom.snorm2(w1, zn); });
}

}  // namespace

HermField omega_u_field(const ModelGeometry& geom, const GluingParameters& glue,
                        const GridField& u) {
  MollifierSpec moll = MollifierSpec::standard(glue.eta);
  const GridField upv = u_plus_v_field(geom, glue, moll, u.tr, u.tan);
  return add_divisor_part(geom, complex_hessian(upv));
}

HermField omega0_field(const ModelGeometry& geom, const GluingParameters& glue,
                       const GridField& u, double beta) {
  MollifierSpec moll = MollifierSpec::standard(glue.eta);
  GridField pot = u_plus_v_field(geom, glue, moll, u.tr, u.tan);
  for (std::size_t it = 0; it < pot.tan.count(); ++it) {
    const cplx w1 = pot.tan.point(it);
    for (int ir = 0; ir < pot.tr.nrad(); ++ir)
      for (int ia = 0; ia < pot.tr.nang(); ++ia)
        pot.at(it, ir, ia) += std::pow(geom.snorm2(w1, pot.tr.point(ir, ia)), beta);
  }
  return add_divisor_part(geom, complex_hessian(pot));
}

BackgroundResult build_background_u(ModelGeometry geom, const BackgroundOptions& opt) {
  geom.rescale_to(opt.rescale_target);

  BackgroundResult res;
  res.moll = MollifierSpec::standard(1.0, opt.mollifier_nodes);

  const TransverseGrid tr = geom.make_transverse(opt.rho_min * geom.transverse_cap,
                                                 opt.nrad, geom.n == 1 ? opt.nang : opt.nang);
  const TangentialGrid tan = geom.make_tangential(opt.ntan);

  const GridField tu = tilde_u(geom, tr, tan);
  res.glue = choose_gluing_parameters(geom, tu, opt.eta_ladder);
  res.moll = MollifierSpec::standard(res.glue.eta, opt.mollifier_nodes);
  const GridField qf = q_function(geom, res.glue.eta, tr, tan);

  // glued field; rotation invariance shares the regularized max across angles
  GridField u;
  u.chart = {ChartKind::Z, 0, 1.0};
  u.tr = tr;
  u.tan = tan;
  u.v.resize(tu.v.size());
  for (std::size_t it = 0; it < tan.count(); ++it) {
    const cplx w1 = tan.point(it);
    for (int ir = 0; ir < tr.nrad(); ++ir) {
      if (geom.rotation_invariant) {
        const double val = background_u_value(geom, res.glue, res.moll, w1, tr.point(ir, 0));
        for (int ia = 0; ia < tr.nang(); ++ia) u.at(it, ir, ia) = val;
      } else {
        for (int ia = 0; ia < tr.nang(); ++ia)
          u.at(it, ir, ia) =
              background_u_value(geom, res.glue, res.moll, w1, tr.point(ir, ia));
      }
    }
  }

  // locality exactness around both seams
  {
    const double lam = 1.6;
    double inner = 0.0, outer = 0.0;
    for (std::size_t it = 0; it < tan.count(); ++it) {
      const cplx w1 = tan.point(it);
      for (int ir = 0; ir < tr.nrad(); ++ir) {
        const cplx zn = tr.point(ir, 0);
        const double s2 = geom.snorm2(w1, zn);
        const double tuv = tu.at(it, ir, 0).real();
        const double qv = qf.at(it, ir, 0).real();
        if (s2 <= res.glue.r_prime && s2 >= res.glue.r_prime / lam)
          inner = std::max(inner, std::abs(m_eta(tuv, qv, res.moll) - tuv));
        if (s2 >= res.glue.r && s2 <= res.glue.r * lam)
          outer = std::max(outer, std::abs(m_eta(tuv, qv, res.moll) - qv));
      }
    }
    res.inner_exactness = inner;
    res.outer_exactness = outer;
  }

  // (i) constancy along the divisor
  {
    const auto limits = u.extrapolate_to_axis();
    double mean = 0.0;
    for (const cplx& l : limits) mean += l.real();
    mean /= double(limits.size());
    double var = 0.0;
    for (const cplx& l : limits) var += sq(l.real() - mean);
    res.u_variance_at_divisor = var / double(limits.size());
  }

  // (ii) exponential vanishing, measured on the local form
  // p^* omega|_D + i ddbar e^{-1/H0} (= omega + i ddbar tilde_u exactly)
  {
    const GridField expf = sample_on(tr, tan, [&](cplx w1, cplx zn) {
      return geom.exp_part(w1, zn);
    });
    const HermField ct = add_divisor_part(geom, complex_hessian(expf));
    const GridField s2f = snorm2_field(geom, tr, tan);
    std::vector<double> xs, ys;
    std::vector<double> ratio(ct.m.size());
    for (std::size_t i = 0; i < ct.m.size(); ++i) ratio[i] = top_power_coeff(ct.m[i]);
    std::size_t i = 0;
    double ratio_max = 0.0;
    for (double rv : ratio) ratio_max = std::max(ratio_max, rv);
    for (std::size_t it = 0; it < tan.count(); ++it)
      for (int ir = 0; ir < tr.nrad(); ++ir)
        for (int ia = 0; ia < tr.nang(); ++ia, ++i) {
          const double om = top_power_coeff(geom.omega(tan.point(it), tr.point(ir, ia)));
          const double rr = ratio[i] / om;
          if (rr > 1e-250 && rr < 1e-2 * ratio_max) {
            xs.push_back(1.0 / s2f.v[i].real());
            ys.push_back(std::log(rr));
          }
        }
    if (xs.size() >= 8) res.vanishing_fit = linear_fit(xs, ys);

    for (double k : opt.k_ladder) {
      double inner_sup = 0.0;
      i = 0;
      const int inner_band = tr.nrad() / 4;
      for (std::size_t it = 0; it < tan.count(); ++it)
        for (int ir = 0; ir < tr.nrad(); ++ir)
          for (int ia = 0; ia < tr.nang(); ++ia, ++i)
            if (ir < inner_band)
              inner_sup = std::max(inner_sup, ratio[i] / std::pow(s2f.v[i].real(), k));
      res.k_ladder_checks.push_back({k, inner_sup});
    }
  }

  // positivity of omega + i ddbar u (exact at the divisor, FD-limited there)
  {
    const HermField cu = omega_u_field(geom, res.glue, u);
    double strict = 1e300, global = 1e300;
    for (std::size_t it = 0; it < tan.count(); ++it) {
      const cplx w1 = tan.point(it);
      for (int ir = 0; ir < tr.nrad(); ++ir)
        for (int ia = 0; ia < tr.nang(); ++ia) {
          const double e = cu.at(it, ir, ia).min_eig();
          global = std::min(global, e);
          if (geom.snorm2(w1, tr.point(ir, ia)) >= res.glue.r_prime)
            strict = std::min(strict, e);
        }
    }
    res.positivity_margin = strict;
    res.near_divisor_floor = global;

    // plurisubharmonicity chain on the gluing annulus
    const HermField htu = complex_hessian(tu);
    double chain = 1e300;
    for (std::size_t it = 0; it < tan.count(); ++it) {
      const cplx w1 = tan.point(it);
      for (int ir = 2; ir < tr.nrad() - 2; ++ir) {
        const cplx zn = tr.point(ir, 0);
        const double s2 = geom.snorm2(w1, zn);
        if (s2 <= res.glue.r_prime * 1.05 || s2 >= res.glue.r / 1.05) continue;
        const auto [d1, d2] =
            m_eta_grad(tu.at(it, ir, 0).real(), qf.at(it, ir, 0).real(), res.moll);
        for (int ia = 0; ia < tr.nang(); ia += (geom.rotation_invariant ? tr.nang() : 1)) {
          const cplx znn = tr.point(ir, ia);
          // i ddbar u = (omega_u field) - omega
          HermMat lhs = cu.at(it, ir, ia) - geom.omega(w1, znn);
          HermMat rhs = htu.at(it, ir, ia);
          rhs *= d1;
          HermMat qh = geom.theta(w1, znn);
          qh *= -res.glue.eta * d2;
          rhs += qh;
          chain = std::min(chain, (lhs - rhs).min_eig());
        }
      }
    }
    res.psh_chain_margin = chain;
  }

  // (iii) conic positivity across the beta ladder, in w charts
  {
    double margin = 1e300, lo = 1e300, hi = 0.0, bb = 0.0;
    for (double beta : opt.beta_ladder) {
      GridField pot = u_plus_v_field(geom, res.glue, res.moll, tr, tan);
      for (std::size_t it = 0; it < tan.count(); ++it) {
        const cplx w1 = tan.point(it);
        for (int ir = 0; ir < tr.nrad(); ++ir) {
          const double s2 = geom.snorm2(w1, tr.point(ir, 0));
          bb = std::max(bb, beta * std::pow(s2, beta));
          const double extra =
              std::pow(s2, beta) + (geom.omega_potential(w1, tr.point(ir, 0)) -
                                    geom.comparison_potential(w1, tr.point(ir, 0)));
          for (int ia = 0; ia < tr.nang(); ++ia) pot.at(it, ir, ia) += extra;
        }
      }
      for (int k : chart_index_set(beta)) {
        const ChartMap chart(k, beta);
        const GridField pw = pullback_field(pot, chart);
        const HermField gw = complex_hessian(pw);
        for (std::size_t it = 0; it < pw.tan.count(); ++it) {
          const cplx w1 = pw.tan.point(it);
          for (int ir = 0; ir < pw.tr.nrad(); ++ir)
            for (int ia = 0; ia < pw.tr.nang(); ++ia) {
              const HermMat g = gw.at(it, ir, ia).symmetrized();
              const double e0 = g.min_eig(), e1 = g.max_eig();
              margin = std::min(margin, e0);
              const double zr = std::pow(pw.tr.radii[ir], 1.0 / beta);
              if (geom.snorm2(w1, cplx(zr, 0)) <= res.glue.r_prime) {
                lo = std::min(lo, e0);
                hi = std::max(hi, e1);
              }
            }
        }
      }
    }
    res.conic_margin = margin;
    res.conic_band_lo = lo;
    res.conic_band_hi = hi;
    res.beta_bound_max = bb;
    res.beta_bound_limit = 1.0 / (-M_E * std::log(geom.sup_s2()));
  }

  res.geom = geom;
  res.u = std::move(u);
  return res;
}

namespace {

// matrix of i d|s|^2 wedge dbar|s|^2 coefficients: outer product of the
// holomorphic gradient with its conjugate
HermField gradient_outer(const GridField& s2f) {
  const bool has_tan = !s2f.tan.trivial();
  HermField out = HermField::like(s2f, has_tan ? 2 : 1);
  const GridField dn = d_hol(s2f);
  if (!has_tan) {
    for (std::size_t i = 0; i < out.m.size(); ++i) out.m[i].a[0] = std::norm(dn.v[i]);
    return out;
  }
  const GridField d1 = d_tan_hol(s2f);
  for (std::size_t i = 0; i < out.m.size(); ++i) {
    out.m[i](0, 0) = std::norm(d1.v[i]);
    out.m[i](0, 1) = d1.v[i] * std::conj(dn.v[i]);
    out.m[i](1, 0) = dn.v[i] * std::conj(d1.v[i]);
    out.m[i](1, 1) = std::norm(dn.v[i]);
  }
  return out;
}

double mat_norm(const HermMat& m) {
  double s = 0.0;
  for (int i = 0; i < m.n * m.n; ++i) s = std::max(s, std::abs(m.a[i]));
  return s;
}

}  // namespace

VolumeExpansion volume_expansion_coeffs(const ModelGeometry& geom, const BackgroundResult& bg,
                                        double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("volume_expansion: beta in (0,1)");
  const TransverseGrid& tr = bg.u.tr;
  const TangentialGrid& tan = bg.u.tan;
  VolumeExpansion out;

  const GridField s2f = snorm2_field(geom, tr, tan);
  GridField s2beta = s2f;
  for (auto& z : s2beta.v) z = std::pow(z.real(), beta);

  // pointwise identity i ddbar |s|^{2 beta} =
  //   -beta |s|^{2 beta} Theta + beta^2 |s|^{2 beta - 4} i d|s|^2 ^ dbar|s|^2
  {
    const HermField lhs = complex_hessian(s2beta);
    const HermField outer = gradient_outer(s2f);
    double worst = 0.0;
    for (std::size_t it = 0; it < tan.count(); ++it) {
      const cplx w1 = tan.point(it);
      for (int ir = 4; ir < tr.nrad() - 4; ++ir)
        for (int ia = 0; ia < tr.nang(); ++ia) {
          const cplx zn = tr.point(ir, ia);
          const double s2 = s2f.at(it, ir, ia).real();
          HermMat rhs = geom.theta(w1, zn);
          rhs *= -beta * std::pow(s2, beta);
          HermMat o = outer.at(it, ir, ia);
          o *= sq(beta) * std::pow(s2, beta - 2.0);
          rhs += o;
          const HermMat l = lhs.at(it, ir, ia);
          const double scale = std::max({1.0, mat_norm(l), mat_norm(rhs)});
          worst = std::max(worst, mat_norm(l - rhs) / scale);
        }
    }
    out.identity_residual = worst;
  }

  const HermField cu = omega_u_field(geom, bg.glue, bg.u);
  const HermField c0 = omega0_field(geom, bg.glue, bg.u, beta);

  // F and k from the vanishing-volume form
  const bool u_trivial = bg.u.max_abs() < 1e-14;
  out.k = u_trivial ? 0.0 : 2.0 * beta;
  out.F = s2f.like();
  for (std::size_t it = 0; it < tan.count(); ++it)
    for (int ir = 0; ir < tr.nrad(); ++ir)
      for (int ia = 0; ia < tr.nang(); ++ia) {
        const std::size_t i = out.F.idx(it, ir, ia);
        if (u_trivial) {
          out.F.v[i] = 1.0;
        } else {
          const double om =
              top_power_coeff(geom.omega(tan.point(it), tr.point(ir, ia)));
          out.F.v[i] =
              top_power_coeff(cu.m[i]) / (std::pow(s2f.v[i].real(), out.k) * om);
        }
      }

  // shell matching of E = (omega_0^n - omega_u^n) / (|s|^{2 beta - 2} omega^n)
  GridField E = s2f.like();
  for (std::size_t it = 0; it < tan.count(); ++it)
    for (int ir = 0; ir < tr.nrad(); ++ir)
      for (int ia = 0; ia < tr.nang(); ++ia) {
        const std::size_t i = E.idx(it, ir, ia);
        const double om =
            top_power_coeff(geom.omega(tan.point(it), tr.point(ir, ia)));
        E.v[i] = (top_power_coeff(c0.m[i]) - top_power_coeff(cu.m[i])) /
                 (std::pow(s2f.v[i].real(), beta - 1.0) * om);
      }

  // closed-form a_0 for comparison near the divisor
  const HermField outer = gradient_outer(s2f);
  GridField a0_formula = s2f.like();
  for (std::size_t it = 0; it < tan.count(); ++it)
    for (int ir = 0; ir < tr.nrad(); ++ir)
      for (int ia = 0; ia < tr.nang(); ++ia) {
        const std::size_t i = a0_formula.idx(it, ir, ia);
        const double om =
            top_power_coeff(geom.omega(tan.point(it), tr.point(ir, ia)));
        const double s2 = s2f.v[i].real();
        if (geom.n == 1) {
          a0_formula.v[i] = sq(beta) * outer.m[i].a[0].real() / (s2 * om);
        } else {
          HermMat o = outer.m[i];
          o *= 1.0 / s2;
          a0_formula.v[i] = 2.0 * sq(beta) * wedge_coeff(o, cu.m[i]) / om;
        }
      }

  if (geom.n == 1) {
    out.a.push_back(E);
  } else {
    // two-power fit a_0 + a_1 |s|^{2 beta} per tangential point, over the
    // inner half of the radii, averaged over angles
    GridField a0 = E.like(), a1 = E.like();
    for (std::size_t it = 0; it < tan.count(); ++it) {
      std::vector<double> b1, b2, y;
      for (int ir = 2; ir < tr.nrad() / 2; ++ir) {
        double e_avg = 0.0, s_avg = 0.0;
        for (int ia = 0; ia < tr.nang(); ++ia) {
          e_avg += E.at(it, ir, ia).real();
          s_avg += std::pow(s2f.at(it, ir, ia).real(), beta);
        }
        b1.push_back(1.0);
        b2.push_back(s_avg / tr.nang());
        y.push_back(e_avg / tr.nang());
      }
      const TwoBasisFit fit = two_basis_fit(b1, b2, y);
      for (int ir = 0; ir < tr.nrad(); ++ir)
        for (int ia = 0; ia < tr.nang(); ++ia) {
          a0.at(it, ir, ia) = fit.c1;
          a1.at(it, ir, ia) = fit.c2;
        }
    }
    out.a.push_back(a0);
    out.a.push_back(a1);
  }

  // a_0 positivity and agreement with the closed form near the divisor
  {
    double mn = 1e300, mismatch = 0.0;
    const int band = std::max(4, tr.nrad() / 8);
    for (std::size_t it = 0; it < tan.count(); ++it)
      for (int ir = 2; ir < band; ++ir)
        for (int ia = 0; ia < tr.nang(); ++ia) {
          const double a0v = out.a[0].at(it, ir, ia).real();
          const double a0f = a0_formula.at(it, ir, ia).real();
          mn = std::min(mn, a0v);
          mismatch = std::max(mismatch, std::abs(a0v - a0f) / std::max(1e-30, std::abs(a0f)));
        }
    out.a0_min_near_divisor = mn;
    out.a0_formula_mismatch = mismatch;
  }

  // ratio identity: |s|^{2-2b} omega_0^n/omega^n = |s|^{2(k+1-b)} F + sum a_j |s|^{2jb}
  {
    double worst = 0.0;
    for (std::size_t it = 0; it < tan.count(); ++it)
      for (int ir = 2; ir < tr.nrad() - 2; ++ir)
        for (int ia = 0; ia < tr.nang(); ++ia) {
          const std::size_t i = E.idx(it, ir, ia);
          const double om =
              top_power_coeff(geom.omega(tan.point(it), tr.point(ir, ia)));
          const double s2 = s2f.v[i].real();
          const double lhs = std::pow(s2, 1.0 - beta) * top_power_coeff(c0.m[i]) / om;
          double rhs = std::pow(s2, out.k + 1.0 - beta) * out.F.v[i].real();
          for (std::size_t j = 0; j < out.a.size(); ++j)
            rhs += out.a[j].v[i].real() * std::pow(s2, beta * double(j));
          worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
        }
    out.ratio_residual = worst;
  }
  return out;
}

GridField log_volume_ratio(const ModelGeometry& geom, const BackgroundResult& bg, double beta) {
  const TransverseGrid& tr = bg.u.tr;
  const TangentialGrid& tan = bg.u.tan;
  const HermField c0 = omega0_field(geom, bg.glue, bg.u, beta);
  GridField out = bg.u.like();
  for (std::size_t it = 0; it < tan.count(); ++it)
    for (int ir = 0; ir < tr.nrad(); ++ir)
      for (int ia = 0; ia < tr.nang(); ++ia) {
        const cplx zn = tr.point(ir, ia);
        const double s2 = geom.snorm2(tan.point(it), zn);
        const double om = top_power_coeff(geom.omega(tan.point(it), zn));
        const double ratio =
            std::pow(s2, 1.0 - beta) * top_power_coeff(c0.at(it, ir, ia)) / om;
        if (!(ratio > 0.0))
          throw std::runtime_error("log_volume_ratio: ratio not positive (conic positivity fails)");
        out.at(it, ir, ia) = std::log(ratio);
      }
  return out;
}

RicciPotential ricci_potential(const ModelGeometry& geom, const BackgroundResult& bg, double beta,
                               RicciMode mode, const GridField& f_input, double lambda) {
  const TransverseGrid& tr = bg.u.tr;
  const TangentialGrid& tan = bg.u.tan;
  RicciPotential out;
  const GridField lr = log_volume_ratio(geom, bg, beta);
  out.F = f_input;
  for (std::size_t it = 0; it < tan.count(); ++it)
    for (int ir = 0; ir < tr.nrad(); ++ir)
      for (int ia = 0; ia < tr.nang(); ++ia) {
        const std::size_t i = out.F.idx(it, ir, ia);
        out.F.v[i] -= lr.v[i];
        if (mode == RicciMode::lambda) {
          const double s2 = geom.snorm2(tan.point(it), tr.point(ir, ia));
          out.F.v[i] -= lambda * (bg.u.v[i].real() + std::pow(s2, beta));
        }
      }

  if (mode == RicciMode::lambda) {
    // smooth-locus identity:
    // Ric(omega_0) - lambda omega_0 - i ddbar F
    //   + (1 - beta)(Theta + i ddbar log |s|^2) = 0 off D
    const HermField c0 = omega0_field(geom, bg.glue, bg.u, beta);
    GridField logdet = bg.u.like();
    for (std::size_t i = 0; i < logdet.v.size(); ++i)
      logdet.v[i] = std::log(top_power_coeff(c0.m[i]));
    const HermField ric = complex_hessian(logdet);  // -Ric, sign applied below
    const HermField hf = complex_hessian(out.F);
    GridField logs2 = bg.u.like();
    for (std::size_t it = 0; it < tan.count(); ++it)
      for (int ir = 0; ir < tr.nrad(); ++ir)
        for (int ia = 0; ia < tr.nang(); ++ia)
          logs2.at(it, ir, ia) =
              std::log(geom.snorm2(tan.point(it), tr.point(ir, ia)));
    const HermField hlogs2 = complex_hessian(logs2);

    double worst = 0.0;
    for (std::size_t it = 0; it < tan.count(); ++it) {
      const cplx w1 = tan.point(it);
      for (int ir = 4; ir < tr.nrad() - 4; ++ir) {
        if (tr.radii[ir] < 0.05 * geom.transverse_cap) continue;
        for (int ia = 0; ia < tr.nang(); ++ia) {
          const cplx zn = tr.point(ir, ia);
          HermMat resid = ric.at(it, ir, ia);
          resid *= -1.0;  // Ric = -i ddbar log det
          HermMat l0 = c0.at(it, ir, ia);
          l0 *= lambda;
          resid -= l0;
          resid -= hf.at(it, ir, ia);
          HermMat lel = hlogs2.at(it, ir, ia) + geom.theta(w1, zn);
          lel *= (1.0 - beta);
          resid += lel;
          const double scale = std::max(1.0, mat_norm(c0.at(it, ir, ia)));
          worst = std::max(worst, mat_norm(resid) / scale);
        }
      }
    }
    out.identity_residual = worst;
  }
  return out;
}

}  // namespace conekit
