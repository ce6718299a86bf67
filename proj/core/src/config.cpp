#include "conekit/config.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace conekit {

namespace {

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stod(tok));
  }
  return out;
}

std::string render_list(const std::vector<double>& v) {
  std::ostringstream ss;
  ss.precision(17);
  for (std::size_t i = 0; i < v.size(); ++i) ss << (i ? "," : "") << v[i];
  return ss.str();
}

}  // namespace

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("config: cannot open " + path);
  ExperimentConfig c;
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  if (kv.empty()) throw std::runtime_error("config: no keys in " + path);

  auto gets = [&](const char* k, std::string& v) { if (kv.count(k)) v = kv[k]; };
  auto getd = [&](const char* k, double& v) { if (kv.count(k)) v = std::stod(kv[k]); };
  auto geti = [&](const char* k, int& v) { if (kv.count(k)) v = std::stoi(kv[k]); };
  auto getl = [&](const char* k, std::vector<double>& v) { if (kv.count(k)) v = parse_list(kv[k]); };

  gets("name", c.name);
  if (kv.count("seed")) c.seed = std::stoull(kv["seed"]);
  gets("output_dir", c.output_dir);
  gets("geometry", c.geometry);
  getl("alphas", c.alphas);
  getl("betas", c.betas);
  getl("alpha_primes", c.alpha_primes);
  if (kv.count("grid_levels")) {
    c.grid_levels.clear();
    for (double x : parse_list(kv["grid_levels"])) c.grid_levels.push_back(int(x));
  }
  getd("rho_min", c.rho_min);
  getd("membership_rho_min", c.membership_rho_min);
  getd("background_rho_min", c.background_rho_min);
  geti("background_nrad", c.background_nrad);
  geti("background_nang", c.background_nang);
  geti("background_ntan", c.background_ntan);
  getd("flattening_tol", c.flattening_tol);
  getd("phi_upper", c.phi_upper);
  getd("phi_near", c.phi_near);
  getd("phase_factor", c.phase_factor);
  getd("locality_tol", c.locality_tol);
  getd("grad_box_tol", c.grad_box_tol);
  getd("grad_sum_tol", c.grad_sum_tol);
  getd("grad_fd_tol", c.grad_fd_tol);
  getd("convexity_tol", c.convexity_tol);
  getd("solver_order_min", c.solver_order_min);
  getd("solver_residual_tol", c.solver_residual_tol);
  getd("a_recovery_rel", c.a_recovery_rel);
  getd("decay_fit_tol", c.decay_fit_tol);
  getd("u_variance_tol", c.u_variance_tol);
  getd("vanishing_r2_min", c.vanishing_r2_min);
  getd("exactness_tol", c.exactness_tol);
  getd("truncation_cstencil", c.truncation_cstencil);
  getd("rm_flat_tol", c.rm_flat_tol);
  getd("holder_growth", c.holder_growth);
  getd("holder_stable", c.holder_stable);
  if (kv.count("pair_budget")) c.pair_budget = std::stoull(kv["pair_budget"]);
  if (kv.count("negative_controls")) c.negative_controls = kv["negative_controls"] != "0";

  if (c.grid_levels.size() < 2) throw std::runtime_error("config: need >= 2 grid levels");
  for (std::size_t i = 1; i < c.grid_levels.size(); ++i)
    if (c.grid_levels[i] <= c.grid_levels[i - 1])
      throw std::runtime_error("config: grid levels must be strictly increasing");
  return c;
}

void ExperimentConfig::save(const std::string& path) const {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("config: cannot write " + path);
  os.precision(17);
  os << "name = " << name << "\n";
  os << "seed = " << seed << "\n";
  os << "output_dir = " << output_dir << "\n";
  os << "geometry = " << geometry << "\n";
  os << "alphas = " << render_list(alphas) << "\n";
  os << "betas = " << render_list(betas) << "\n";
  os << "alpha_primes = " << render_list(alpha_primes) << "\n";
  os << "grid_levels = ";
  for (std::size_t i = 0; i < grid_levels.size(); ++i) os << (i ? "," : "") << grid_levels[i];
  os << "\n";
  os << "rho_min = " << rho_min << "\n";
  os << "membership_rho_min = " << membership_rho_min << "\n";
  os << "background_rho_min = " << background_rho_min << "\n";
  os << "background_nrad = " << background_nrad << "\n";
  os << "background_nang = " << background_nang << "\n";
  os << "background_ntan = " << background_ntan << "\n";
  os << "flattening_tol = " << flattening_tol << "\n";
  os << "phi_upper = " << phi_upper << "\n";
  os << "phi_near = " << phi_near << "\n";
  os << "phase_factor = " << phase_factor << "\n";
  os << "locality_tol = " << locality_tol << "\n";
  os << "grad_box_tol = " << grad_box_tol << "\n";
  os << "grad_sum_tol = " << grad_sum_tol << "\n";
  os << "grad_fd_tol = " << grad_fd_tol << "\n";
  os << "convexity_tol = " << convexity_tol << "\n";
  os << "solver_order_min = " << solver_order_min << "\n";
  os << "solver_residual_tol = " << solver_residual_tol << "\n";
  os << "a_recovery_rel = " << a_recovery_rel << "\n";
  os << "decay_fit_tol = " << decay_fit_tol << "\n";
  os << "u_variance_tol = " << u_variance_tol << "\n";
  os << "vanishing_r2_min = " << vanishing_r2_min << "\n";
  os << "exactness_tol = " << exactness_tol << "\n";
  os << "truncation_cstencil = " << truncation_cstencil << "\n";
  os << "rm_flat_tol = " << rm_flat_tol << "\n";
  os << "holder_growth = " << holder_growth << "\n";
  os << "holder_stable = " << holder_stable << "\n";
  os << "pair_budget = " << pair_budget << "\n";
  os << "negative_controls = " << (negative_controls ? 1 : 0) << "\n";
}

}  // namespace conekit
