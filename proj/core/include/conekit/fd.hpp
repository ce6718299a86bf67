#pragma once
#include "conekit/grid.hpp"

namespace conekit {

// Fourth-order centered stencils in grid coordinates, one-sided of matching
// order at non-periodic boundaries. Grid axes are uniform by construction
// (sigma = log rho for the radial axis).
enum class Axis { Sigma, Theta, TanX, TanY };

GridField fd_d1(const GridField& f, Axis axis);
GridField fd_d2(const GridField& f, Axis axis);

// ---- Wirtinger derivatives in the chart's transverse complex coordinate ----
GridField d_hol(const GridField& f);         // df/dzeta
GridField d_antihol(const GridField& f);     // df/d(conj zeta)
GridField hess_mixed(const GridField& f);    // d2f / dzeta d(conj zeta)
GridField hess_pure(const GridField& f);     // d2f / dzeta^2

// ---- tangential coordinate w1 (n = 2) ----
GridField d_tan_hol(const GridField& f);       // df/dw1
GridField d_tan_antihol(const GridField& f);   // df/d(conj w1)
GridField hess_tan_mixed(const GridField& f);  // d2f / dw1 d(conj w1)
GridField hess_cross(const GridField& f);      // d2f / dw1 d(conj zeta)
GridField hess_cross_t(const GridField& f);    // d2f / dzeta d(conj w1)

// ---- Cartesian patch versions (patch coordinate is the complex variable) ----
CartesianField cart_d1x(const CartesianField& f);
CartesianField cart_d1y(const CartesianField& f);
CartesianField cart_hess_mixed(const CartesianField& f);  // d2f / dz dzbar

}  // namespace conekit
