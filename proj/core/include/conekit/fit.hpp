#pragma once
#include <vector>

namespace conekit {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Ordinary least squares y = slope*x + intercept.
LineFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

/// Fit y ~ C * t^p in log-log coordinates. Points with y <= 0 are skipped.
/// Returns slope = p, intercept = log(C).
LineFit loglog_fit(const std::vector<double>& t, const std::vector<double>& y);

/// Least squares for y = c1 * b1 + c2 * b2 over given basis samples.
struct TwoBasisFit {
  double c1 = 0.0, c2 = 0.0;
  double max_residual = 0.0;
};
TwoBasisFit two_basis_fit(const std::vector<double>& b1, const std::vector<double>& b2,
                          const std::vector<double>& y);

}  // namespace conekit
