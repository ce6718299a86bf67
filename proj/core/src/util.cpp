#include "conekit/util.hpp"

#include <functional>
#include <stdexcept>

namespace conekit {

std::vector<double> linspace(double a, double b, int n) {
  if (n < 1) throw std::invalid_argument("linspace: n >= 1");
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = a;
    return v;
  }
  const double h = (b - a) / (n - 1);
  for (int i = 0; i < n; ++i) v[i] = a + h * i;
  v.back() = b;
  return v;
}

std::vector<double> logspace(double a, double b, int n) {
  if (!(a > 0.0 && b > 0.0)) throw std::invalid_argument("logspace: endpoints must be positive");
  std::vector<double> v = linspace(std::log(a), std::log(b), n);
  for (double& x : v) x = std::exp(x);
  return v;
}

Rng::Rng(std::uint64_t master_seed, const std::string& stream) : eng_(0) {
  // splitmix-style fold of the stream name into the seed
  std::uint64_t h = master_seed ^ 0x9e3779b97f4a7c15ull;
  for (unsigned char c : stream) {
    h ^= c;
    h *= 0xff51afd7ed558ccdull;
    h ^= h >> 33;
  }
  eng_.seed(h);
}

Extrapolation aitken_limit(const std::vector<double>& s) {
  Extrapolation out;
  if (s.empty()) throw std::invalid_argument("aitken_limit: empty sequence");
  if (s.size() < 3) {
    out.value = s.back();
    out.residual = s.size() == 2 ? std::abs(s[1] - s[0]) : 0.0;
    return out;
  }
  const double s0 = s[s.size() - 3], s1 = s[s.size() - 2], s2 = s.back();
  const double denom = s2 - 2.0 * s1 + s0;
  const double num = s2 - s1;
  const double scale = std::abs(s0) + std::abs(s1) + std::abs(s2) + 1e-300;
  if (std::abs(denom) < 1e-14 * scale) {
    // already converged (or exactly linear); take the innermost value
    out.value = s2;
    out.residual = std::abs(num);
    return out;
  }
  const double corr = num * num / denom;
  out.value = s2 - corr;
  out.residual = std::abs(corr);
  return out;
}

ExtrapolationC aitken_limit(const std::vector<cplx>& s) {
  std::vector<double> re(s.size()), im(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    re[i] = s[i].real();
    im[i] = s[i].imag();
  }
  const Extrapolation er = aitken_limit(re), ei = aitken_limit(im);
  return {cplx(er.value, ei.value), std::hypot(er.residual, ei.residual)};
}

}  // namespace conekit
