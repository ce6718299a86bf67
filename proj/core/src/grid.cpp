#include "conekit/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace conekit {

double TransverseGrid::sigma_step() const {
  if (radii.size() < 2) return 0.0;
  return std::log(radii[1]) - std::log(radii[0]);
}

double TransverseGrid::theta_step() const {
  if (angles.size() < 2) return 0.0;
  return angles[1] - angles[0];
}

cplx TransverseGrid::point(int ir, int ia) const {
  return std::polar(radii[ir], angles[ia]);
}

TransverseGrid TransverseGrid::log_polar(double rho_min, double rho_max, int nrad, int nang,
                                         double angle0, double angle1, bool periodic) {
  if (!(rho_min > 0.0 && rho_max > rho_min))
    throw std::invalid_argument("TransverseGrid: need 0 < rho_min < rho_max");
  if (nrad < 2 || nang < 1) throw std::invalid_argument("TransverseGrid: grid too small");
  TransverseGrid g;
  g.radii = logspace(rho_min, rho_max, nrad);
  if (nang == 1) {
    g.angles = {angle0};
  } else if (periodic) {
    // angle1 is the period end, excluded
    g.angles.resize(nang);
    const double h = (angle1 - angle0) / nang;
    for (int i = 0; i < nang; ++i) g.angles[i] = angle0 + h * i;
  } else {
    g.angles = linspace(angle0, angle1, nang);
  }
  g.periodic = periodic && nang > 1;
  return g;
}

TransverseGrid TransverseGrid::disc(double rho_min, double rho_max, int nrad, int nang) {
  return log_polar(rho_min, rho_max, nrad, nang, 0.0, 2.0 * M_PI, true);
}

TransverseGrid TransverseGrid::ray(double rho_min, double rho_max, int nrad) {
  return log_polar(rho_min, rho_max, nrad, 1, 0.0, 0.0, false);
}

cplx TangentialGrid::point(std::size_t it) const {
  if (trivial()) return {0.0, 0.0};
  const std::size_t ix = it % xs.size(), iy = it / xs.size();
  return {xs[ix], ys[iy]};
}

TangentialGrid TangentialGrid::square(double half_width, int n) {
  TangentialGrid g;
  g.xs = linspace(-half_width, half_width, n);
  g.ys = g.xs;
  return g;
}

GridField GridField::like() const {
  GridField out;
  out.chart = chart;
  out.tr = tr;
  out.tan = tan;
  out.v.assign(v.size(), cplx(0.0, 0.0));
  return out;
}

double GridField::max_abs() const {
  double m = 0.0;
  for (const cplx& z : v) m = std::max(m, std::abs(z));
  return m;
}

std::vector<double> GridField::shell_max_abs() const {
  std::vector<double> out(tr.nrad(), 0.0);
  for (std::size_t it = 0; it < tan.count(); ++it)
    for (int ir = 0; ir < tr.nrad(); ++ir)
      for (int ia = 0; ia < tr.nang(); ++ia)
        out[ir] = std::max(out[ir], std::abs(at(it, ir, ia)));
  return out;
}

std::vector<cplx> GridField::shell_mean() const {
  std::vector<cplx> out(tr.nrad(), cplx(0, 0));
  const double norm = 1.0 / (tan.count() * tr.nang());
  for (std::size_t it = 0; it < tan.count(); ++it)
    for (int ir = 0; ir < tr.nrad(); ++ir)
      for (int ia = 0; ia < tr.nang(); ++ia)
        out[ir] += at(it, ir, ia) * norm;
  return out;
}

std::vector<cplx> GridField::extrapolate_to_axis(int depth) const {
  depth = std::min(depth, tr.nrad());
  std::vector<cplx> out;
  out.reserve(tan.count() * tr.nang());
  for (std::size_t it = 0; it < tan.count(); ++it)
    for (int ia = 0; ia < tr.nang(); ++ia) {
      std::vector<cplx> seq(depth);
      for (int j = 0; j < depth; ++j) seq[j] = at(it, depth - 1 - j, ia);  // toward rho -> 0
      out.push_back(aitken_limit(seq).value);
    }
  return out;
}

GridField GridField::trim_radial(int lo, int hi) const {
  const int nr = tr.nrad();
  if (lo + hi >= nr - 4) throw std::invalid_argument("trim_radial: nothing left");
  GridField out;
  out.chart = chart;
  out.tan = tan;
  out.tr = tr;
  out.tr.radii.assign(tr.radii.begin() + lo, tr.radii.end() - hi);
  out.v.resize(tan.count() * out.tr.nrad() * tr.nang());
  for (std::size_t it = 0; it < tan.count(); ++it)
    for (int ir = 0; ir < out.tr.nrad(); ++ir)
      for (int ia = 0; ia < tr.nang(); ++ia) out.at(it, ir, ia) = at(it, ir + lo, ia);
  return out;
}

GridField GridField::trim_angular(int lo, int hi) const {
  if (tr.periodic || tr.nang() == 1) return *this;
  const int na = tr.nang();
  if (lo + hi >= na - 4) throw std::invalid_argument("trim_angular: nothing left");
  GridField out;
  out.chart = chart;
  out.tan = tan;
  out.tr = tr;
  out.tr.angles.assign(tr.angles.begin() + lo, tr.angles.end() - hi);
  out.v.resize(tan.count() * tr.nrad() * out.tr.nang());
  for (std::size_t it = 0; it < tan.count(); ++it)
    for (int ir = 0; ir < tr.nrad(); ++ir)
      for (int ia = 0; ia < out.tr.nang(); ++ia) out.at(it, ir, ia) = at(it, ir, ia + lo);
  return out;
}

namespace {

void write_header(std::ostream& os, const GridField& f) {
  os << "# conekit-grid 1\n";
  os << "# chart: " << (f.chart.kind == ChartKind::Z ? "z" : "w") << " k=" << f.chart.index
     << " beta=" << std::scientific << f.chart.beta << "\n";
  os << "# transverse: nrad=" << f.tr.nrad() << " nang=" << f.tr.nang()
     << " periodic=" << (f.tr.periodic ? 1 : 0) << "\n";
  os << "# radii:";
  for (double r : f.tr.radii) os << " " << r;
  os << "\n# angles:";
  for (double a : f.tr.angles) os << " " << a;
  os << "\n# tangential: nx=" << f.tan.nx() << " ny=" << f.tan.ny() << "\n";
  os << "# xs:";
  for (double x : f.tan.xs) os << " " << x;
  os << "\n# ys:";
  for (double y : f.tan.ys) os << " " << y;
  os << "\n# samples: " << f.v.size() << " rows re,im; order tangential, radius, angle\n";
}

GridField read_header(std::istream& is, std::size_t& nsamples) {
  GridField f;
  std::string line;
  auto next = [&]() {
    if (!std::getline(is, line)) throw std::runtime_error("grid header: truncated");
    return line;
  };
  if (next() != "# conekit-grid 1") throw std::runtime_error("grid header: bad magic");
  {
    std::string kind;
    char ck;
    next();
    std::istringstream ss(line.substr(1));
    std::string tag;
    ss >> tag >> kind;
    f.chart.kind = (kind == "z") ? ChartKind::Z : ChartKind::W;
    std::string kv;
    while (ss >> kv) {
      if (kv.rfind("k=", 0) == 0) f.chart.index = std::stoi(kv.substr(2));
      if (kv.rfind("beta=", 0) == 0) f.chart.beta = std::stod(kv.substr(5));
    }
    (void)ck;
  }
  int nrad = 0, nang = 0, periodic = 1, nx = 0, ny = 0;
  {
    next();
    std::sscanf(line.c_str(), "# transverse: nrad=%d nang=%d periodic=%d", &nrad, &nang, &periodic);
  }
  auto read_list = [&](const char* tag, int count) {
    next();
    std::istringstream ss(line);
    std::string hash, name;
    ss >> hash >> name;
    if (name.rfind(tag, 0) != 0) throw std::runtime_error("grid header: expected " + std::string(tag));
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i)
      if (!(ss >> out[i])) throw std::runtime_error("grid header: short list " + std::string(tag));
    return out;
  };
  f.tr.radii = read_list("radii:", nrad);
  f.tr.angles = read_list("angles:", nang);
  f.tr.periodic = periodic != 0;
  {
    next();
    std::sscanf(line.c_str(), "# tangential: nx=%d ny=%d", &nx, &ny);
  }
  f.tan.xs = read_list("xs:", nx);
  f.tan.ys = read_list("ys:", ny);
  {
    next();
    unsigned long long n = 0;
    std::sscanf(line.c_str(), "# samples: %llu", &n);
    nsamples = static_cast<std::size_t>(n);
  }
  return f;
}

}  // namespace

void GridField::save_csv(const std::string& path) const {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path);
  os.precision(17);
  write_header(os, *this);
  for (const cplx& z : v) os << std::scientific << z.real() << "," << z.imag() << "\n";
}

GridField GridField::load_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  std::size_t n = 0;
  GridField f = read_header(is, n);
  f.v.resize(n);
  std::string line;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::getline(is, line)) throw std::runtime_error("grid csv: truncated samples");
    double re = 0, im = 0;
    if (std::sscanf(line.c_str(), "%lf,%lf", &re, &im) != 2)
      throw std::runtime_error("grid csv: bad sample row");
    f.v[i] = {re, im};
  }
  return f;
}

void GridField::save_binary_pair(const std::string& stem) const {
  {
    std::ofstream os(stem + ".gridh");
    if (!os) throw std::runtime_error("cannot open " + stem + ".gridh");
    os.precision(17);
    write_header(os, *this);
  }
  std::ofstream ob(stem + ".gridb", std::ios::binary);
  if (!ob) throw std::runtime_error("cannot open " + stem + ".gridb");
  for (const cplx& z : v) {
    const double re = z.real(), im = z.imag();
    ob.write(reinterpret_cast<const char*>(&re), sizeof re);
    ob.write(reinterpret_cast<const char*>(&im), sizeof im);
  }
}

GridField GridField::load_binary_pair(const std::string& stem) {
  std::ifstream is(stem + ".gridh");
  if (!is) throw std::runtime_error("cannot open " + stem + ".gridh");
  std::size_t n = 0;
  GridField f = read_header(is, n);
  f.v.resize(n);
  std::ifstream ib(stem + ".gridb", std::ios::binary);
  if (!ib) throw std::runtime_error("cannot open " + stem + ".gridb");
  for (std::size_t i = 0; i < n; ++i) {
    double re = 0, im = 0;
    ib.read(reinterpret_cast<char*>(&re), sizeof re);
    ib.read(reinterpret_cast<char*>(&im), sizeof im);
    if (!ib) throw std::runtime_error("grid binary: truncated");
    f.v[i] = {re, im};
  }
  return f;
}

GridField sample_field(const ChartTag& chart, const TransverseGrid& tr,
                       const TangentialGrid& tan,
                       const std::function<cplx(cplx, cplx)>& fn) {
  GridField f;
  f.chart = chart;
  f.tr = tr;
  f.tan = tan;
  f.v.resize(tan.count() * tr.nrad() * tr.nang());
  for (std::size_t it = 0; it < tan.count(); ++it) {
    const cplx w1 = tan.point(it);
    for (int ir = 0; ir < tr.nrad(); ++ir)
      for (int ia = 0; ia < tr.nang(); ++ia) f.at(it, ir, ia) = fn(w1, tr.point(ir, ia));
  }
  return f;
}

GridField sample_field(const ChartTag& chart, const TransverseGrid& tr,
                       const std::function<cplx(cplx)>& fn) {
  return sample_field(chart, tr, TangentialGrid{},
                      [&fn](cplx, cplx zeta) { return fn(zeta); });
}

CartesianField sample_cartesian(double x0, double x1, int nx, double y0, double y1, int ny,
                                const std::function<cplx(cplx)>& fn) {
  CartesianField f;
  f.xs = linspace(x0, x1, nx);
  f.ys = linspace(y0, y1, ny);
  f.v.resize(static_cast<std::size_t>(nx) * ny);
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) f.at(ix, iy) = fn(f.point(ix, iy));
  return f;
}

}  // namespace conekit
