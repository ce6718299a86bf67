#pragma once
#include <vector>

#include "conekit/fd.hpp"
#include "conekit/grid.hpp"
#include "conekit/herm.hpp"

namespace conekit {

/// Matrix-valued field on a chart grid (metric coefficients, curvature forms).
struct HermField {
  ChartTag chart;
  TransverseGrid tr;
  TangentialGrid tan;
  std::vector<HermMat> m;

  std::size_t idx(std::size_t it, int ir, int ia) const {
    return (it * tr.nrad() + ir) * tr.nang() + ia;
  }
  HermMat& at(std::size_t it, int ir, int ia) { return m[idx(it, ir, ia)]; }
  const HermMat& at(std::size_t it, int ir, int ia) const { return m[idx(it, ir, ia)]; }

  static HermField like(const GridField& f, int n);
  double min_eig() const;
  GridField component(int i, int j) const;  // as a scalar field
};

/// Complex Hessian of a sampled potential: 1x1 (transverse only) or 2x2 with
/// the tangential coordinate first. Not symmetrized.
HermField complex_hessian(const GridField& potential);

}  // namespace conekit
