#include "conekit/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "conekit/charts.hpp"
#include "conekit/fd.hpp"

namespace conekit {

namespace {

// Thomas solve of a tridiagonal system; sub/up have size n-1.
void tridiag_solve(std::vector<double> diag, const std::vector<double>& sub,
                   const std::vector<double>& sup, std::vector<cplx>& rhs) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double w = sub[i - 1] / diag[i - 1];
    diag[i] -= w * sup[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  rhs[n - 1] /= diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - sup[i] * rhs[i + 1]) / diag[i];
}

struct Dft {
  int n;
  std::vector<cplx> tw;  // e^{-2 pi i a k / n}
  explicit Dft(int n_) : n(n_), tw(static_cast<std::size_t>(n_) * n_) {
    for (int a = 0; a < n; ++a)
      for (int k = 0; k < n; ++k)
        tw[static_cast<std::size_t>(a) * n + k] =
            std::polar(1.0, -2.0 * M_PI * double(a) * double(k) / n);
  }
  void forward(const cplx* in, long stride, cplx* out) const {
    for (int k = 0; k < n; ++k) {
      cplx acc = 0;
      for (int a = 0; a < n; ++a) acc += in[a * stride] * tw[static_cast<std::size_t>(a) * n + k];
      out[k] = acc / double(n);
    }
  }
  void inverse(const cplx* in, cplx* out, long stride) const {
    for (int a = 0; a < n; ++a) {
      cplx acc = 0;
      for (int k = 0; k < n; ++k)
        acc += in[k] * std::conj(tw[static_cast<std::size_t>(a) * n + k]);
      out[a * stride] = acc;
    }
  }
};

// Solve u_ss + u_tt = R on the log-polar grid, Dirichlet at the outer radius,
// decaying-mode inner condition with an exponential tail correction:
// u' - |w| u = R_mode(s_min) / (p + |w|) at the innermost node, where p is the
// decay power of R below the grid.
GridField solve_modes(const GridField& R, const std::vector<cplx>& boundary, double tail_p) {
  const int nr = R.tr.nrad(), na = R.tr.nang();
  if (!R.tr.periodic) throw std::invalid_argument("poisson: angular grid must be periodic");
  if (nr < 4) throw std::invalid_argument("poisson: radial grid too coarse");
  const std::size_t nt = R.tan.count();
  if (boundary.size() != nt * static_cast<std::size_t>(na))
    throw std::invalid_argument("poisson: boundary size mismatch");

  const double h = R.tr.sigma_step();
  const double period = na * R.tr.theta_step();
  const Dft dft(na);
  GridField out = R.like();

  std::vector<cplx> rhat(static_cast<std::size_t>(nr) * na);
  std::vector<cplx> bhat(na);
  std::vector<cplx> rhs(nr - 1);
  std::vector<double> diag(nr - 1), sub(nr - 2), sup(nr - 2);

  for (std::size_t it = 0; it < nt; ++it) {
    for (int ir = 0; ir < nr; ++ir)
      dft.forward(&R.v[R.idx(it, ir, 0)], 1, &rhat[static_cast<std::size_t>(ir) * na]);
    dft.forward(&boundary[it * na], 1, bhat.data());

    for (int k = 0; k < na; ++k) {
      const int mk = (k <= na / 2) ? k : k - na;
      const double om = std::abs(2.0 * M_PI * mk / period);
      const cplx g = rhat[k] / (tail_p + om);  // rhat at ir = 0
      // unknowns v_0 .. v_{nr-2}; v_{nr-1} = bhat[k]
      for (int i = 0; i < nr - 1; ++i) {
        rhs[i] = rhat[static_cast<std::size_t>(i) * na + k];
        diag[i] = -2.0 / (h * h) - om * om;
        if (i > 0) sub[i - 1] = 1.0 / (h * h);
        if (i < nr - 2) sup[i] = 1.0 / (h * h);
      }
      // ghost-eliminated inner condition, second order
      diag[0] = (-2.0 - 2.0 * h * om) / (h * h) - om * om;
      sup[0] = 2.0 / (h * h);
      rhs[0] += 2.0 * g / h;
      rhs[nr - 2] -= bhat[k] / (h * h);
      tridiag_solve(diag, sub, sup, rhs);
      for (int i = 0; i < nr - 1; ++i) rhat[static_cast<std::size_t>(i) * na + k] = rhs[i];
      rhat[static_cast<std::size_t>(nr - 1) * na + k] = bhat[k];
    }
    for (int ir = 0; ir < nr; ++ir)
      dft.inverse(&rhat[static_cast<std::size_t>(ir) * na], &out.v[out.idx(it, ir, 0)], 1);
  }
  return out;
}

GridField transverse_solve(const GridField& f, const std::vector<cplx>& boundary, double beta) {
  GridField R = f;
  for (std::size_t it = 0; it < f.tan.count(); ++it)
    for (int ir = 0; ir < f.tr.nrad(); ++ir) {
      const double w = 4.0 * sq(beta) * std::pow(f.tr.radii[ir], 2.0 * beta);
      for (int ia = 0; ia < f.tr.nang(); ++ia) R.at(it, ir, ia) *= w;
    }
  return solve_modes(R, boundary, 2.0 * beta);
}

}  // namespace

GridField solve_poisson(const GridField& f, const std::vector<cplx>& boundary, double beta,
                        const PoissonOptions& opt) {
  if (f.chart.kind != ChartKind::Z)
    throw std::invalid_argument("solve_poisson: field must live in the z chart");
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("solve_poisson: beta in (0,1)");
  if (f.tan.trivial()) return transverse_solve(f, boundary, beta);

  // tangential Laplacian folded into the right-hand side, damped fixed point
  GridField v = f.like();
  double change = 0.0;
  for (int outer = 0; outer < opt.max_outer; ++outer) {
    GridField rhs = f;
    const GridField lap_tan = hess_tan_mixed(v);
    for (std::size_t i = 0; i < rhs.v.size(); ++i) rhs.v[i] -= lap_tan.v[i];
    const GridField vnew = transverse_solve(rhs, boundary, beta);
    change = 0.0;
    for (std::size_t i = 0; i < v.v.size(); ++i) {
      const cplx next = (1.0 - opt.damping) * v.v[i] + opt.damping * vnew.v[i];
      change = std::max(change, std::abs(next - v.v[i]));
      v.v[i] = next;
    }
    if (change < opt.outer_tol) return v;
  }
  throw std::runtime_error("solve_poisson: fixed point did not converge (last change " +
                           std::to_string(change) + ")");
}

GridField solve_poisson_euclidean(const GridField& f, const std::vector<cplx>& boundary) {
  GridField R = f;
  for (std::size_t it = 0; it < f.tan.count(); ++it)
    for (int ir = 0; ir < f.tr.nrad(); ++ir) {
      const double w = 4.0 * sq(f.tr.radii[ir]);
      for (int ia = 0; ia < f.tr.nang(); ++ia) R.at(it, ir, ia) *= w;
    }
  return solve_modes(R, boundary, 2.0);
}

GridField unfold_to_cone(const GridField& f, double beta) {
  GridField out = f;
  out.chart = {ChartKind::W, 0, beta};
  for (int ir = 0; ir < f.tr.nrad(); ++ir) out.tr.radii[ir] = std::pow(f.tr.radii[ir], beta);
  for (int ia = 0; ia < f.tr.nang(); ++ia) out.tr.angles[ia] = beta * f.tr.angles[ia];
  return out;
}

GridField poisson_residual(const GridField& v, const GridField& f, double beta) {
  GridField r = conic_laplacian_apply(v, beta);
  for (std::size_t i = 0; i < r.v.size(); ++i) r.v[i] -= f.v[i];
  return r;
}

ConeResidual cone_residual(const GridField& f_tilde, double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("cone_residual: beta in (0,1)");
  ConeResidual out{f_tilde.like(), {0, 0}, 0.0, {}};
  const auto limits = f_tilde.extrapolate_to_axis();
  cplx f0{0, 0};
  for (const cplx& l : limits) f0 += l;
  f0 /= double(limits.size());
  double res = 0.0;
  for (const cplx& l : limits) res = std::max(res, std::abs(l - f0));
  if (!std::isfinite(f0.real()) || !std::isfinite(f0.imag()))
    throw std::runtime_error("cone_residual: ftilde(0) extrapolation unstable");
  out.f0 = f0;
  out.f0_residual = res;

  // the z grid is the exact preimage of the zeta grid: |z| = |zeta|^{1/beta}
  GridField h;
  h.chart = {ChartKind::Z, 0, beta};
  h.tan = f_tilde.tan;
  h.tr = f_tilde.tr;
  for (int ir = 0; ir < h.tr.nrad(); ++ir)
    h.tr.radii[ir] = std::pow(f_tilde.tr.radii[ir], 1.0 / beta);
  h.v.resize(f_tilde.v.size());
  for (std::size_t it = 0; it < h.tan.count(); ++it)
    for (int ir = 0; ir < h.tr.nrad(); ++ir) {
      const double w = std::pow(h.tr.radii[ir], 2.0 * beta - 2.0);
      for (int ia = 0; ia < h.tr.nang(); ++ia)
        h.at(it, ir, ia) = w * (f_tilde.at(it, ir, ia) - f0);
    }
  out.h = std::move(h);
  out.envelope = loglog_fit(out.h.tr.radii, out.h.shell_max_abs());
  return out;
}

ExpansionResult extract_expansion(const GridField& v, const GridField& f_tilde,
                                  const ConeParams& params, double alpha_prime) {
  params.require_admissible();
  if (!(alpha_prime > 0.0 && alpha_prime < params.alpha))
    throw std::invalid_argument("extract_expansion: need 0 < alpha' < alpha");
  const double beta = params.beta;
  const double split = alpha_prime * beta - (1.0 - 2.0 * beta);
  if (std::abs(split) < 1e-12)
    throw std::invalid_argument(
        "extract_expansion: alpha' beta = 1 - 2 beta is excluded; perturb alpha'");

  ExpansionResult out;
  out.p_bar = 2.0 / (2.0 - 2.0 * beta - alpha_prime * beta);

  // a = beta^{-2} ftilde(0), averaged over rays
  {
    const auto limits = f_tilde.extrapolate_to_axis();
    cplx f0{0, 0};
    for (const cplx& l : limits) f0 += l;
    f0 /= double(limits.size());
    out.a = f0 / sq(beta);
  }

  GridField F = v;
  for (std::size_t it = 0; it < v.tan.count(); ++it)
    for (int ir = 0; ir < v.tr.nrad(); ++ir) {
      const double r2b = std::pow(v.tr.radii[ir], 2.0 * beta);
      for (int ia = 0; ia < v.tr.nang(); ++ia) F.at(it, ir, ia) -= out.a * r2b;
    }

  out.b_branch_active = split > 0.0;
  if (out.b_branch_active) {
    // skip the one-sided stencil rows before extrapolating the derivative
    const GridField Fz = d_hol(F).trim_radial(2, 2);
    const auto limits = Fz.extrapolate_to_axis();
    cplx b{0, 0};
    for (const cplx& l : limits) b += l;
    b /= double(limits.size());
    out.b = b;
  } else {
    out.b = cplx(0.0, 0.0);  // dichotomy: exactly zero
  }

  out.V = std::move(F);
  if (out.b != cplx(0.0, 0.0)) {
    for (std::size_t it = 0; it < out.V.tan.count(); ++it)
      for (int ir = 0; ir < out.V.tr.nrad(); ++ir)
        for (int ia = 0; ia < out.V.tr.nang(); ++ia)
          out.V.at(it, ir, ia) -= out.b * out.V.tr.point(ir, ia);
  }

  const DecayCheck dc = check_decay(out.V, params, alpha_prime);
  out.fitted_decay_exponent = dc.second_derivative.slope;
  out.fitted_constant = std::exp(dc.second_derivative.intercept);
  return out;
}

namespace {

// shell maxima restricted to a dyadic radius ladder
void ladder_samples(const GridField& field, int lo, int hi, std::vector<double>& rad,
                    std::vector<double>& val) {
  const auto sm = field.shell_max_abs();
  int last_idx = -1;
  for (int j = lo; j <= hi; ++j) {
    const double target = std::pow(2.0, -j);
    if (target < field.tr.radii.front() || target > field.tr.radii.back()) continue;
    int best = 0;
    double bd = 1e300;
    for (int ir = 0; ir < field.tr.nrad(); ++ir) {
      const double d = std::abs(std::log(field.tr.radii[ir] / target));
      if (d < bd) {
        bd = d;
        best = ir;
      }
    }
    if (best == last_idx) continue;
    last_idx = best;
    rad.push_back(field.tr.radii[best]);
    val.push_back(sm[best]);
  }
}

}  // namespace

DecayCheck check_decay(const GridField& V, const ConeParams& params, double alpha_prime,
                       int ladder_lo, int ladder_hi, double fit_tol) {
  const double beta = params.beta;
  DecayCheck out;
  out.target_slope = alpha_prime * beta;

  GridField L1 = hess_pure(V);
  const GridField Vz = d_hol(V);
  GridField L2 = L1;
  for (std::size_t it = 0; it < V.tan.count(); ++it)
    for (int ir = 0; ir < V.tr.nrad(); ++ir) {
      const double w = std::pow(V.tr.radii[ir], 2.0 - 2.0 * beta);
      for (int ia = 0; ia < V.tr.nang(); ++ia) {
        const cplx zeta = V.tr.point(ir, ia);
        L2.at(it, ir, ia) =
            w * std::abs(L1.at(it, ir, ia) + (1.0 - beta) / zeta * Vz.at(it, ir, ia));
        L1.at(it, ir, ia) = w * std::abs(L1.at(it, ir, ia));
      }
    }

  std::vector<double> rad, val;
  ladder_samples(L1, ladder_lo, ladder_hi, rad, val);
  if (rad.size() < 4) throw std::invalid_argument("check_decay: radius ladder too shallow");
  out.second_derivative = loglog_fit(rad, val);
  rad.clear();
  val.clear();
  ladder_samples(L2, ladder_lo, ladder_hi, rad, val);
  out.conic_derivative = loglog_fit(rad, val);

  const double t = out.target_slope - fit_tol;
  // an identically-vanishing envelope passes trivially (slope fit returns 0, r2 1)
  const bool zero1 = L1.max_abs() < 1e-12, zero2 = L2.max_abs() < 1e-12;
  out.pass = (zero1 || out.second_derivative.slope >= t) &&
             (zero2 || out.conic_derivative.slope >= t);
  return out;
}

FirstDerivativeBound first_derivative_bound(const GridField& F, const ConeParams& params,
                                            double alpha_prime, double fit_tol) {
  const double beta = params.beta;
  FirstDerivativeBound out;
  const GridField Fz = d_hol(F);
  const auto sm = Fz.shell_max_abs();
  std::vector<double> b1, b2, y, rad;
  for (int ir = 0; ir < F.tr.nrad(); ++ir) {
    const double rho = F.tr.radii[ir];
    if (rho > 0.25) continue;
    b1.push_back(std::pow(rho, 2.0 * beta - 1.0 + alpha_prime * beta));
    b2.push_back(1.0);
    y.push_back(sm[ir]);
    rad.push_back(rho);
  }
  out.envelope = two_basis_fit(b1, b2, y);

  if (beta >= 0.5) {
    out.claim_checked = true;
    const GridField Fzi = Fz.trim_radial(2, 2);
    const auto limits = Fzi.extrapolate_to_axis();
    cplx b{0, 0};
    for (const cplx& l : limits) b += l;
    b /= double(limits.size());
    out.b = b;
    GridField diff = Fzi;
    for (std::size_t i = 0; i < diff.v.size(); ++i) diff.v[i] -= b;
    const auto dm = diff.shell_max_abs();
    std::vector<double> lhs, rr;
    for (int ir = 0; ir < diff.tr.nrad(); ++ir) {
      const double rho = diff.tr.radii[ir];
      if (rho > 0.25) continue;
      lhs.push_back(std::pow(rho, 1.0 - 2.0 * beta) * dm[ir]);
      rr.push_back(rho);
    }
    out.claim = loglog_fit(rr, lhs);
    // finite differences of Fz resolve the claim only above their drift floor
    const double h = F.tr.sigma_step();
    double wmax = 0.0;
    for (double rho : rr) wmax = std::max(wmax, std::pow(rho, 1.0 - 2.0 * beta));
    const double floor =
        100.0 * std::pow(h, 4) * std::max(1.0, Fz.max_abs()) * std::max(1.0, wmax);
    const bool below_floor = *std::max_element(lhs.begin(), lhs.end()) < floor;
    out.claim_pass = below_floor || out.claim.slope >= alpha_prime * beta - fit_tol;
  }
  return out;
}

}  // namespace conekit
