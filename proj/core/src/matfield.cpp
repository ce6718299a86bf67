#include "conekit/matfield.hpp"

#include <algorithm>

namespace conekit {

HermField HermField::like(const GridField& f, int n) {
  HermField out;
  out.chart = f.chart;
  out.tr = f.tr;
  out.tan = f.tan;
  HermMat z;
  z.n = n;
  out.m.assign(f.v.size(), z);
  return out;
}

double HermField::min_eig() const {
  double e = 1e300;
  for (const HermMat& h : m) e = std::min(e, h.min_eig());
  return e;
}

GridField HermField::component(int i, int j) const {
  GridField out;
  out.chart = chart;
  out.tr = tr;
  out.tan = tan;
  out.v.resize(m.size());
  for (std::size_t k = 0; k < m.size(); ++k) out.v[k] = m[k](i, j);
  return out;
}

HermField complex_hessian(const GridField& potential) {
  const bool has_tan = !potential.tan.trivial();
  HermField out = HermField::like(potential, has_tan ? 2 : 1);
  const GridField hnn = hess_mixed(potential);
  if (!has_tan) {
    for (std::size_t k = 0; k < out.m.size(); ++k) out.m[k].a[0] = hnn.v[k];
    return out;
  }
  const GridField h11 = hess_tan_mixed(potential);
  const GridField h1n = hess_cross(potential);    // d2 / dw1 d(conj zeta)
  const GridField hn1 = hess_cross_t(potential);  // d2 / dzeta d(conj w1)
  for (std::size_t k = 0; k < out.m.size(); ++k) {
    out.m[k](0, 0) = h11.v[k];
    out.m[k](0, 1) = h1n.v[k];
    out.m[k](1, 0) = hn1.v[k];
    out.m[k](1, 1) = hnn.v[k];
  }
  return out;
}

}  // namespace conekit
