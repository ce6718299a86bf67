#include "conekit/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace conekit {

ModelGeometry ModelGeometry::disc(double kappa) {
  ModelGeometry g;
  g.kind = Kind::disc_n1;
  g.name = "disc_n1";
  g.n = 1;
  g.kappa = kappa;
  g.transverse_cap = 1.0;
  return g;
}

ModelGeometry ModelGeometry::p1_bundle(int kb) {
  if (kb != 1 && kb != 2) throw std::invalid_argument("p1_bundle: kb in {1, 2}");
  ModelGeometry g;
  g.kind = Kind::line_bundle_p1;
  g.name = "line_bundle_p1";
  g.n = 2;
  g.kb = kb;
  g.tangential_half = 0.75;
  // fiber cap chosen so the fiber norm t stays below 0.45 over the base patch
  const double max_w1_sq = 2.0 * g.tangential_half * g.tangential_half;
  g.transverse_cap = std::sqrt(0.45 / std::pow(1.0 + max_w1_sq, kb));
  return g;
}

ModelGeometry ModelGeometry::by_name(const std::string& name) {
  if (name == "disc_n1") return disc();
  if (name == "disc_n1_fs") return disc(1.0);
  if (name == "line_bundle_p1") return p1_bundle(1);
  if (name == "line_bundle_p1_k2") return p1_bundle(2);
  throw std::invalid_argument("unknown geometry: " + name);
}

double ModelGeometry::H0(cplx w1, cplx zn) const {
  const double r2 = std::norm(zn);
  if (kind == Kind::disc_n1) return r2 * std::pow(1.0 + r2, -kappa);
  return r2 * std::pow(1.0 + std::norm(w1), kb);
}

double ModelGeometry::sup_s2() const {
  if (kind == Kind::disc_n1) return cs2 * std::pow(2.0, -kappa);  // at |z| = 1
  const double max_w1_sq = 2.0 * tangential_half * tangential_half;
  return cs2 * transverse_cap * transverse_cap * std::pow(1.0 + max_w1_sq, kb);
}

HermMat ModelGeometry::omega(cplx w1, cplx zn) const {
  if (kind == Kind::disc_n1) return HermMat::diag1(1.0);
  HermMat m;
  m.n = 2;
  const double a2 = std::norm(w1);
  const double efs = 1.0 / sq(1.0 + a2);
  const double epsi = std::pow(1.0 + a2, kb);
  const cplx psi1 = double(kb) * std::conj(w1) / (1.0 + a2);
  const double psi11 = kb * efs;
  const double t = std::norm(zn) * epsi;
  m(0, 0) = efs + t * (psi11 + std::norm(psi1));
  m(0, 1) = zn * epsi * psi1;
  m(1, 0) = std::conj(m(0, 1));
  m(1, 1) = epsi;
  return m;
}

HermMat ModelGeometry::theta(cplx w1, cplx zn) const {
  (void)zn;
  if (kind == Kind::disc_n1) {
    const double r2 = std::norm(zn);
    return HermMat::diag1(kappa / sq(1.0 + r2));
  }
  HermMat m;
  m.n = 2;
  m(0, 0) = -double(kb) / sq(1.0 + std::norm(w1));
  return m;
}

double ModelGeometry::comparison_potential(cplx w1, cplx zn) const {
  if (kind == Kind::disc_n1) return std::norm(zn);
  return std::norm(zn) * std::pow(1.0 + std::norm(w1), kb);  // fiber norm t
}

double ModelGeometry::omega_potential(cplx w1, cplx zn) const {
  if (kind == Kind::disc_n1) return std::norm(zn);
  return std::log(1.0 + std::norm(w1)) + comparison_potential(w1, zn);
}

double ModelGeometry::exp_part(cplx w1, cplx zn) const {
  const double h = H0(w1, zn);
  if (h < 1.0 / 745.0) return 0.0;  // below the double-precision floor
  return std::exp(-1.0 / h);
}

double ModelGeometry::tilde_u_value(cplx w1, cplx zn) const {
  return exp_part(w1, zn) - comparison_potential(w1, zn);
}

HermMat ModelGeometry::omega_on_divisor(cplx w1) const {
  if (kind == Kind::disc_n1) return HermMat::diag1(0.0);
  HermMat m;
  m.n = 2;
  m(0, 0) = 1.0 / sq(1.0 + std::norm(w1));
  return m;
}

void ModelGeometry::rescale_to(double target_sup_s2) {
  cs2 *= target_sup_s2 / sup_s2();
}

TransverseGrid ModelGeometry::make_transverse(double rho_min, int nrad, int nang) const {
  return TransverseGrid::disc(rho_min, transverse_cap, nrad, nang);
}

TangentialGrid ModelGeometry::make_tangential(int npts) const {
  if (n == 1) return {};
  return TangentialGrid::square(tangential_half, npts);
}

}  // namespace conekit
