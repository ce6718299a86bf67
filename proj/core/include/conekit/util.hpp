#pragma once
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace conekit {

using cplx = std::complex<double>;

inline double sq(double x) { return x * x; }

std::vector<double> linspace(double a, double b, int n);
// n points with log-uniform spacing, a > 0.
std::vector<double> logspace(double a, double b, int n);

/// Deterministic RNG used everywhere; one instance per check, seeded from the
/// master seed and the check name so that checks are order-independent.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  Rng(std::uint64_t master_seed, const std::string& stream);

  double uniform(double lo = 0.0, double hi = 1.0) {
    return lo + (hi - lo) * dist_(eng_);
  }
  std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(eng_);
  }

 private:
  std::mt19937_64 eng_;
  std::uniform_real_distribution<double> dist_{0.0, 1.0};
};

/// Aitken limit of a geometrically converging sequence; values ordered with
/// the limit approached at the back. residual ~ size of the last correction.
struct Extrapolation {
  double value = 0.0;
  double residual = 0.0;
};
Extrapolation aitken_limit(const std::vector<double>& s);

struct ExtrapolationC {
  cplx value{0.0, 0.0};
  double residual = 0.0;
};
ExtrapolationC aitken_limit(const std::vector<cplx>& s);

}  // namespace conekit
