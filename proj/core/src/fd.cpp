#include "conekit/fd.hpp"

#include <cmath>
#include <stdexcept>

namespace conekit {

namespace {

// stencil tables, all scaled by 12h (d1) or 12h^2 (d2)
constexpr double kD1C[5] = {1, -8, 0, 8, -1};
constexpr double kD1F0[5] = {-25, 48, -36, 16, -3};
constexpr double kD1F1[5] = {-3, -10, 18, -6, 1};
constexpr double kD2C[5] = {-1, 16, -30, 16, -1};
constexpr double kD2F0[6] = {45, -154, 214, -156, 61, -10};
constexpr double kD2F1[6] = {10, -15, -4, 14, -6, 1};

void derive_line(const cplx* in, long stride, cplx* out, long out_stride, int n, double h,
                 int order, bool periodic) {
  auto get = [&](long i) { return in[i * stride]; };
  auto put = [&](long i, cplx val) { out[i * out_stride] = val; };
  const double s1 = 1.0 / (12.0 * h);
  const double s2 = 1.0 / (12.0 * h * h);
  if (periodic) {
    for (int i = 0; i < n; ++i) {
      cplx acc = 0;
      for (int j = -2; j <= 2; ++j) {
        const int k = ((i + j) % n + n) % n;
        acc += (order == 1 ? kD1C[j + 2] : kD2C[j + 2]) * get(k);
      }
      put(i, acc * (order == 1 ? s1 : s2));
    }
    return;
  }
  for (int i = 0; i < n; ++i) {
    cplx acc = 0;
    if (i >= 2 && i <= n - 3) {
      for (int j = -2; j <= 2; ++j)
        acc += (order == 1 ? kD1C[j + 2] : kD2C[j + 2]) * get(i + j);
      put(i, acc * (order == 1 ? s1 : s2));
    } else if (order == 1) {
      const bool fwd = i < 2;
      const double* c = (i == 0 || i == n - 1) ? kD1F0 : kD1F1;
      const int base = (i == 0 || i == n - 1) ? 0 : -1;
      for (int j = 0; j < 5; ++j) {
        const int off = base + j;
        acc += c[j] * get(fwd ? i + off : i - off);
      }
      put(i, acc * s1 * (fwd ? 1.0 : -1.0));
    } else {
      const bool fwd = i < 2;
      const double* c = (i == 0 || i == n - 1) ? kD2F0 : kD2F1;
      const int base = (i == 0 || i == n - 1) ? 0 : -1;
      for (int j = 0; j < 6; ++j) {
        const int off = base + j;
        acc += c[j] * get(fwd ? i + off : i - off);
      }
      put(i, acc * s2);
    }
  }
}

void check_axis(int n, bool periodic, int order) {
  const int need = periodic ? 5 : (order == 2 ? 6 : 5);
  if (n < need) throw std::invalid_argument("fd: grid too coarse for the stencil");
}

GridField fd_axis(const GridField& f, Axis axis, int order) {
  GridField out = f.like();
  const int nr = f.tr.nrad(), na = f.tr.nang();
  const long nt = static_cast<long>(f.tan.count());
  switch (axis) {
    case Axis::Sigma: {
      check_axis(nr, false, order);
      const double h = f.tr.sigma_step();
      for (long it = 0; it < nt; ++it)
        for (int ia = 0; ia < na; ++ia)
          derive_line(&f.v[f.idx(it, 0, ia)], na, &out.v[out.idx(it, 0, ia)], na, nr, h, order,
                      false);
      break;
    }
    case Axis::Theta: {
      check_axis(na, f.tr.periodic, order);
      const double h = f.tr.theta_step();
      for (long it = 0; it < nt; ++it)
        for (int ir = 0; ir < nr; ++ir)
          derive_line(&f.v[f.idx(it, ir, 0)], 1, &out.v[out.idx(it, ir, 0)], 1, na, h, order,
                      f.tr.periodic);
      break;
    }
    case Axis::TanX: {
      const int nx = f.tan.nx(), ny = f.tan.ny();
      if (nx == 0) throw std::invalid_argument("fd: no tangential grid");
      check_axis(nx, false, order);
      const double h = f.tan.xs[1] - f.tan.xs[0];
      const long stride = static_cast<long>(nr) * na;
      for (int iy = 0; iy < ny; ++iy)
        for (int ir = 0; ir < nr; ++ir)
          for (int ia = 0; ia < na; ++ia) {
            const std::size_t base = f.idx(static_cast<std::size_t>(iy) * nx, ir, ia);
            derive_line(&f.v[base], stride, &out.v[base], stride, nx, h, order, false);
          }
      break;
    }
    case Axis::TanY: {
      const int nx = f.tan.nx(), ny = f.tan.ny();
      if (ny == 0) throw std::invalid_argument("fd: no tangential grid");
      check_axis(ny, false, order);
      const double h = f.tan.ys[1] - f.tan.ys[0];
      const long stride = static_cast<long>(nx) * nr * na;
      for (int ix = 0; ix < nx; ++ix)
        for (int ir = 0; ir < nr; ++ir)
          for (int ia = 0; ia < na; ++ia) {
            const std::size_t base = f.idx(ix, ir, ia);
            derive_line(&f.v[base], stride, &out.v[base], stride, ny, h, order, false);
          }
      break;
    }
  }
  return out;
}

}  // namespace

GridField fd_d1(const GridField& f, Axis axis) { return fd_axis(f, axis, 1); }
GridField fd_d2(const GridField& f, Axis axis) { return fd_axis(f, axis, 2); }

GridField d_hol(const GridField& f) {
  const GridField fs = fd_d1(f, Axis::Sigma), ft = fd_d1(f, Axis::Theta);
  GridField out = f.like();
  for (std::size_t it = 0; it < f.tan.count(); ++it)
    for (int ir = 0; ir < f.tr.nrad(); ++ir)
      for (int ia = 0; ia < f.tr.nang(); ++ia) {
        const cplx zeta = f.tr.point(ir, ia);
        out.at(it, ir, ia) =
            (fs.at(it, ir, ia) - cplx(0, 1) * ft.at(it, ir, ia)) / (2.0 * zeta);
      }
  return out;
}

GridField d_antihol(const GridField& f) {
  const GridField fs = fd_d1(f, Axis::Sigma), ft = fd_d1(f, Axis::Theta);
  GridField out = f.like();
  for (std::size_t it = 0; it < f.tan.count(); ++it)
    for (int ir = 0; ir < f.tr.nrad(); ++ir)
      for (int ia = 0; ia < f.tr.nang(); ++ia) {
        const cplx zeta = f.tr.point(ir, ia);
        out.at(it, ir, ia) =
            (fs.at(it, ir, ia) + cplx(0, 1) * ft.at(it, ir, ia)) / (2.0 * std::conj(zeta));
      }
  return out;
}

GridField hess_mixed(const GridField& f) {
  const GridField fss = fd_d2(f, Axis::Sigma), ftt = fd_d2(f, Axis::Theta);
  GridField out = f.like();
  for (std::size_t it = 0; it < f.tan.count(); ++it)
    for (int ir = 0; ir < f.tr.nrad(); ++ir) {
      const double w = 1.0 / (4.0 * sq(f.tr.radii[ir]));
      for (int ia = 0; ia < f.tr.nang(); ++ia)
        out.at(it, ir, ia) = (fss.at(it, ir, ia) + ftt.at(it, ir, ia)) * w;
    }
  return out;
}

GridField hess_pure(const GridField& f) {
  const GridField fs = fd_d1(f, Axis::Sigma), ft = fd_d1(f, Axis::Theta);
  const GridField fss = fd_d2(f, Axis::Sigma), ftt = fd_d2(f, Axis::Theta);
  const GridField fst = fd_d1(fd_d1(f, Axis::Sigma), Axis::Theta);
  GridField out = f.like();
  const cplx I(0, 1);
  for (std::size_t it = 0; it < f.tan.count(); ++it)
    for (int ir = 0; ir < f.tr.nrad(); ++ir)
      for (int ia = 0; ia < f.tr.nang(); ++ia) {
        const cplx zeta = f.tr.point(ir, ia);
        const cplx fuu =
            (fss.at(it, ir, ia) - ftt.at(it, ir, ia) - 2.0 * I * fst.at(it, ir, ia)) / 4.0;
        const cplx fu = (fs.at(it, ir, ia) - I * ft.at(it, ir, ia)) / 2.0;
        out.at(it, ir, ia) = (fuu - fu) / (zeta * zeta);
      }
  return out;
}

GridField d_tan_hol(const GridField& f) {
  const GridField fx = fd_d1(f, Axis::TanX), fy = fd_d1(f, Axis::TanY);
  GridField out = f.like();
  for (std::size_t i = 0; i < f.v.size(); ++i)
    out.v[i] = (fx.v[i] - cplx(0, 1) * fy.v[i]) / 2.0;
  return out;
}

GridField d_tan_antihol(const GridField& f) {
  const GridField fx = fd_d1(f, Axis::TanX), fy = fd_d1(f, Axis::TanY);
  GridField out = f.like();
  for (std::size_t i = 0; i < f.v.size(); ++i)
    out.v[i] = (fx.v[i] + cplx(0, 1) * fy.v[i]) / 2.0;
  return out;
}

GridField hess_tan_mixed(const GridField& f) {
  const GridField fxx = fd_d2(f, Axis::TanX), fyy = fd_d2(f, Axis::TanY);
  GridField out = f.like();
  for (std::size_t i = 0; i < f.v.size(); ++i) out.v[i] = (fxx.v[i] + fyy.v[i]) / 4.0;
  return out;
}

GridField hess_cross(const GridField& f) { return d_antihol(d_tan_hol(f)); }
GridField hess_cross_t(const GridField& f) { return d_tan_antihol(d_hol(f)); }

namespace {

CartesianField cart_axis(const CartesianField& f, bool xdir, int order) {
  CartesianField out = f;
  const int nx = f.nx(), ny = f.ny();
  if (xdir) {
    check_axis(nx, false, order);
    const double h = f.xs[1] - f.xs[0];
    for (int iy = 0; iy < ny; ++iy)
      derive_line(&f.v[static_cast<std::size_t>(iy) * nx], 1,
                  &out.v[static_cast<std::size_t>(iy) * nx], 1, nx, h, order, false);
  } else {
    check_axis(ny, false, order);
    const double h = f.ys[1] - f.ys[0];
    for (int ix = 0; ix < nx; ++ix)
      derive_line(&f.v[ix], nx, &out.v[ix], nx, ny, h, order, false);
  }
  return out;
}

}  // namespace

CartesianField cart_d1x(const CartesianField& f) { return cart_axis(f, true, 1); }
CartesianField cart_d1y(const CartesianField& f) { return cart_axis(f, false, 1); }

CartesianField cart_hess_mixed(const CartesianField& f) {
  const CartesianField fxx = cart_axis(f, true, 2), fyy = cart_axis(f, false, 2);
  CartesianField out = f;
  for (std::size_t i = 0; i < f.v.size(); ++i) out.v[i] = (fxx.v[i] + fyy.v[i]) / 4.0;
  return out;
}

}  // namespace conekit
