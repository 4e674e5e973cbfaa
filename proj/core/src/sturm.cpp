#include "prqi/sturm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <sstream>
#include <string_view>

#include "prqi/errors.hpp"
#include "prqi/inertia.hpp"
#include "prqi/linalg.hpp"

namespace prqi::sturm {

namespace {

struct QuadratureRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// Gauss-Legendre nodes by Newton iteration on P_n.
QuadratureRule gauss_legendre(std::size_t n) {
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = pk;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

std::size_t first_unknown(const SturmConfig& config) {
  return config.left_bc == LeftBoundary::natural ? 0 : 1;
}

bool is_half_integer(double v) {
  const double twice = 2.0 * v;
  return std::abs(twice - std::round(twice)) < 1e-12;
}

}  // namespace

void SturmConfig::validate() const {
  if (!(length > 0.0) || !std::isfinite(length)) throw DomainError("X must be positive");
  if (!(h > 0.0 && h < length)) throw DomainError("mesh width must satisfy 0 < h < X");
  const double ratio = length / h;
  if (std::abs(ratio - std::round(ratio)) > 1e-12 * ratio) {
    throw DomainError("X / h must be an integer (uniform mesh)");
  }
  if (!(x_dirichlet_pad >= 0.0 && x_dirichlet_pad < length)) {
    throw DomainError("x0 must lie in [0, X)");
  }
  if (quadrature_points < 2) throw DomainError("quadrature needs at least 2 points");
}

std::size_t SturmConfig::elements() const {
  return static_cast<std::size_t>(std::llround(length / h));
}

std::vector<double> SturmConfig::nodes() const {
  const std::size_t ne = elements();
  std::vector<double> x;
  x.reserve(ne + 1);
  for (std::size_t i = first_unknown(*this); i <= ne; ++i) x.push_back(static_cast<double>(i) * h);
  return x;
}

void InitialProfile::validate(const SturmConfig& config) const {
  if (!(n_osc > 0.0) || !is_half_integer(n_osc)) {
    throw DomainError("n_osc must be a positive multiple of 0.5");
  }
  if (!(R > config.x_dirichlet_pad)) throw DomainError("profile cutoff R must exceed x0");
  if (!(R < config.length)) throw DomainError("profile cutoff R must be below X");
}

double potential(double x) { return std::sin(x) - 40.0 / (1.0 + x * x); }

GeneralizedPair assemble(const SturmConfig& config) { return assemble(config, potential); }

GeneralizedPair assemble(const SturmConfig& config, const std::function<double(double)>& q_of_x) {
  config.validate();
  const std::size_t ne = config.elements();
  const double h = config.h;
  const QuadratureRule rule = gauss_legendre(config.quadrature_points);

  std::vector<double> k_diag(ne + 1, 0.0), k_off(ne, 0.0);
  std::vector<double> m_diag(ne + 1, 0.0), m_off(ne, 0.0);
  for (std::size_t e = 0; e < ne; ++e) {
    const double a = static_cast<double>(e) * h;
    double b00 = 0.0, b01 = 0.0, b11 = 0.0;
    for (std::size_t g = 0; g < rule.nodes.size(); ++g) {
      const double t = (rule.nodes[g] + 1.0) / 2.0;  // local coordinate in [0, 1]
      const double w = rule.weights[g] * h / 2.0;
      const double q = q_of_x(a + t * h);
      b00 += w * q * (1.0 - t) * (1.0 - t);
      b01 += w * q * (1.0 - t) * t;
      b11 += w * q * t * t;
    }
    k_diag[e] += 1.0 / h + b00;
    k_diag[e + 1] += 1.0 / h + b11;
    k_off[e] += -1.0 / h + b01;
    m_diag[e] += h / 3.0;
    m_diag[e + 1] += h / 3.0;
    m_off[e] += h / 6.0;
  }
  const std::size_t skip = first_unknown(config);
  const auto drop = [skip](std::vector<double> v) {
    v.erase(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(skip));
    return v;
  };
  return GeneralizedPair(
      HermitianOperator::tridiagonal(drop(std::move(k_diag)), drop(std::move(k_off))),
      HermitianOperator::tridiagonal(drop(std::move(m_diag)), drop(std::move(m_off))));
}

ComplexVector build_initial_vector(const SturmConfig& config, const InitialProfile& profile,
                                   const HermitianOperator& mass) {
  profile.validate(config);
  const std::vector<double> x = config.nodes();
  if (mass.size() != x.size()) throw DimensionError("mass matrix does not match the mesh");
  const auto pieces = static_cast<long>(std::llround(2.0 * profile.n_osc));
  const double piece_length = profile.R / static_cast<double>(pieces);
  ComplexVector f(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= config.x_dirichlet_pad || x[i] > profile.R) continue;
    const long piece = std::min(static_cast<long>(std::floor(x[i] / piece_length)), pieces - 1);
    f[i] = piece % 2 == 0 ? 1.0 : -1.0;
  }
  return m_normalize(mass, std::move(f));
}

std::size_t eigenvalue_index(const GeneralizedPair& p, double lambda) {
  Inertia in = shifted_inertia(p, lambda);
  if (in.zero != 0) {
    in = shifted_inertia(p, lambda + 1e-10);
    if (in.zero != 0) throw DomainError("inertia factorization broke down twice");
  }
  return in.negative + 1;
}

LocalizationGuard guard_from_cutoff(const SturmConfig& config, double S, double eta_star) {
  const std::vector<double> x = config.nodes();
  const auto it = std::upper_bound(x.begin(), x.end(), S);
  if (it == x.end()) throw DomainError("guard cutoff S lies beyond the mesh");
  LocalizationGuard guard{static_cast<std::size_t>(it - x.begin()), eta_star};
  guard.validate(x.size());
  return guard;
}

namespace {

GapResult describe(const SturmConfig& config, const GeneralizedPair& system, SolveOutcome outcome,
                   const GapSolverSettings& settings) {
  GapResult result;
  const double lambda = outcome.eigenpair.value;
  // The converged value is itself an eigenvalue; count strictly below a point just under it.
  result.index = eigenvalue_index(system, lambda - 1e-7 * (1.0 + std::abs(lambda)));
  result.in_gap = BandStructure::in_gap(lambda);
  result.eta_final = eta(outcome.eigenpair.vector,
                         guard_from_cutoff(config, settings.S, settings.eta_star));
  result.outcome = std::move(outcome);
  return result;
}

}  // namespace

GapResult solve_gap_eigenpair(const SturmConfig& config, const GeneralizedPair& system,
                              const InitialProfile& profile, const GapSolverSettings& settings) {
  const ComplexVector x0 = build_initial_vector(config, profile, system.m());
  std::optional<LocalizationGuard> guard;
  if (settings.use_guard) guard = guard_from_cutoff(config, settings.S, settings.eta_star);
  SolveOutcome out = prqi_generalized(system, x0, settings.schedule, settings.stop, guard);
  return describe(config, system, std::move(out), settings);
}

GapResult solve_classic(const SturmConfig& config, const GeneralizedPair& system,
                        const InitialProfile& profile, const GapSolverSettings& settings) {
  const ComplexVector x0 = build_initial_vector(config, profile, system.m());
  SolveOutcome out = classic_rqi_generalized(system, x0, settings.stop);
  return describe(config, system, std::move(out), settings);
}

std::vector<InitialProfile> default_profiles() {
  return {{1.5, 35.0}, {2.0, 35.0}, {2.5, 35.0}, {3.0, 55.0},
          {3.5, 55.0}, {4.0, 55.0}, {4.5, 55.0}, {5.0, 55.0}};
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double to_number(const std::string& key, const std::string& value, std::size_t line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) {
    throw ParseError("line " + std::to_string(line) + ": '" + key + "' expects a number, got '" +
                     value + "'");
  }
  return v;
}

bool to_bool(const std::string& key, const std::string& value, std::size_t line) {
  if (value == "true" || value == "on" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "off" || value == "0" || value == "no") return false;
  throw ParseError("line " + std::to_string(line) + ": '" + key + "' expects a boolean");
}

std::size_t to_count(const std::string& key, const std::string& value, std::size_t line) {
  const double v = to_number(key, value, line);
  if (!(v >= 1.0) || v != std::floor(v)) {
    throw ParseError("line " + std::to_string(line) + ": '" + key +
                     "' expects a positive integer");
  }
  return static_cast<std::size_t>(v);
}

}  // namespace

SturmRunConfig parse_run_config(std::istream& in) {
  SturmRunConfig cfg;
  std::vector<double> rs, oscs;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(std::string_view(raw).substr(0, raw.find('#')));
    if (line.empty()) continue;
    std::string key, value;
    if (const auto eq = line.find('='); eq != std::string::npos) {
      key = trim(std::string_view(line).substr(0, eq));
      value = trim(std::string_view(line).substr(eq + 1));
    } else {
      const auto sp = line.find_first_of(" \t");
      if (sp == std::string::npos) {
        throw ParseError("line " + std::to_string(line_no) + ": expected 'key = value'");
      }
      key = line.substr(0, sp);
      value = trim(std::string_view(line).substr(sp + 1));
    }
    if (key == "X") {
      cfg.mesh.length = to_number(key, value, line_no);
    } else if (key == "h") {
      cfg.mesh.h = to_number(key, value, line_no);
    } else if (key == "x0") {
      cfg.mesh.x_dirichlet_pad = to_number(key, value, line_no);
    } else if (key == "quadrature") {
      cfg.mesh.quadrature_points = to_count(key, value, line_no);
    } else if (key == "left_bc") {
      if (value == "natural") {
        cfg.mesh.left_bc = LeftBoundary::natural;
      } else if (value == "dirichlet") {
        cfg.mesh.left_bc = LeftBoundary::dirichlet;
      } else {
        throw ParseError("line " + std::to_string(line_no) +
                         ": left_bc must be natural or dirichlet");
      }
    } else if (key == "tol") {
      cfg.solver.stop.tol = to_number(key, value, line_no);
    } else if (key == "max_iters") {
      cfg.solver.stop.max_iters = to_count(key, value, line_no);
    } else if (key == "eta_star") {
      cfg.solver.eta_star = to_number(key, value, line_no);
    } else if (key == "S") {
      cfg.solver.S = to_number(key, value, line_no);
    } else if (key == "schedule") {
      cfg.solver.schedule = GammaSchedule::parse(value);
    } else if (key == "guard") {
      cfg.solver.use_guard = to_bool(key, value, line_no);
    } else if (key == "R") {
      rs.push_back(to_number(key, value, line_no));
    } else if (key == "n_osc") {
      oscs.push_back(to_number(key, value, line_no));
    } else if (key == "profiles") {
      std::stringstream items(value);
      std::string item;
      while (std::getline(items, item, ',')) {
        item = trim(item);
        const auto colon = item.find(':');
        if (colon == std::string::npos) {
          throw ParseError("line " + std::to_string(line_no) +
                           ": profiles entries look like n_osc:R");
        }
        cfg.profiles.push_back({to_number(key, trim(item.substr(0, colon)), line_no),
                                to_number(key, trim(item.substr(colon + 1)), line_no)});
      }
    } else {
      throw ParseError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  if (rs.size() != oscs.size()) throw ParseError("R and n_osc must be given the same number of times");
  for (std::size_t i = 0; i < rs.size(); ++i) cfg.profiles.push_back({oscs[i], rs[i]});
  if (cfg.profiles.empty()) cfg.profiles = default_profiles();
  cfg.mesh.validate();
  cfg.solver.stop.validate();
  if (!(cfg.solver.eta_star > 0.0 && cfg.solver.eta_star < 1.0)) {
    throw ParseError("eta_star must lie in (0, 1)");
  }
  for (const auto& p : cfg.profiles) p.validate(cfg.mesh);
  return cfg;
}

SturmRunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file '" + path + "'");
  return parse_run_config(in);
}

}  // namespace prqi::sturm
