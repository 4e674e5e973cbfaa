#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "prqi/complex_vector.hpp"
#include "prqi/hermitian_operator.hpp"
#include "prqi/schedule.hpp"
#include "prqi/solvers.hpp"

namespace prqi::sturm {

enum class LeftBoundary { natural, dirichlet };

/// Mesh and discretization of -u'' + q u = lambda u on [0, X], Neumann at X.
struct SturmConfig {
  /// Truncation point X. 107.3 reproduces the published eigenvalue indices.
  double length = 107.3;
  double h = 0.01;
  /// The initial profile is forced to zero on [0, x0].
  double x_dirichlet_pad = 0.1;
  std::size_t quadrature_points = 3;
  /// natural keeps the node at x = 0; dirichlet removes its basis function.
  LeftBoundary left_bc = LeftBoundary::natural;

  void validate() const;
  [[nodiscard]] std::size_t elements() const;
  /// Coordinates of the retained mesh nodes, one per unknown.
  [[nodiscard]] std::vector<double> nodes() const;
};

/// Piecewise constant +-1 function with 2 n_osc pieces on (0, R], zero beyond R.
struct InitialProfile {
  double n_osc = 3.0;
  double R = 35.0;

  void validate(const SturmConfig& config) const;
};

/// Essential spectrum bands near the first gap.
struct BandStructure {
  static constexpr double j1_lo = -0.37849;
  static constexpr double j1_hi = -0.34767;
  static constexpr double j2_lo = 0.59480;
  static constexpr double j2_hi = 0.91806;

  static bool in_j1(double lambda) noexcept { return lambda >= j1_lo && lambda <= j1_hi; }
  static bool in_gap(double lambda) noexcept { return lambda > j1_hi && lambda < j2_lo; }
  static bool in_j2(double lambda) noexcept { return lambda >= j2_lo && lambda <= j2_hi; }
};

/// sin x - 40 / (1 + x^2).
double potential(double x);

/// (A + B, M): stiffness plus potential mass, and the P1 mass matrix. Both tridiagonal.
GeneralizedPair assemble(const SturmConfig& config);
/// Same assembly with a caller-supplied potential q(x).
GeneralizedPair assemble(const SturmConfig& config, const std::function<double(double)>& q);

/// Profile sampled at the mesh nodes and M-normalized.
ComplexVector build_initial_vector(const SturmConfig& config, const InitialProfile& profile,
                                   const HermitianOperator& mass);

/// Number of generalized eigenvalues below lambda, plus one. Uses the inertia of
/// (A + B) - lambda M; retries once at lambda + 1e-10 when lambda hits an eigenvalue.
std::size_t eigenvalue_index(const GeneralizedPair& p, double lambda);

/// Guard whose tail is the set of nodes with x > S.
LocalizationGuard guard_from_cutoff(const SturmConfig& config, double S, double eta_star);

struct GapSolverSettings {
  GammaSchedule schedule = GammaSchedule::residual_norm_squared();
  /// Iterations are counted up to the first iterate whose residual passes the test, so no
  /// extra step is taken here.
  StoppingCriteria stop{1e-8, 100, false, false};
  double S = 80.0;
  double eta_star = 0.4;
  bool use_guard = true;
};

struct GapResult {
  SolveOutcome outcome;
  std::size_t index = 0;
  bool in_gap = false;
  double eta_final = 0.0;
};

/// PRQI (generalized, with guard) from the given profile on an assembled system.
GapResult solve_gap_eigenpair(const SturmConfig& config, const GeneralizedPair& system,
                              const InitialProfile& profile, const GapSolverSettings& settings);

/// Classic generalized RQI from the same profile, for comparison.
GapResult solve_classic(const SturmConfig& config, const GeneralizedPair& system,
                        const InitialProfile& profile, const GapSolverSettings& settings);

/// Parsed key-value run file.
struct SturmRunConfig {
  SturmConfig mesh;
  GapSolverSettings solver;
  std::vector<InitialProfile> profiles;
};

/// The eight (n_osc, R) rows of the published results table.
std::vector<InitialProfile> default_profiles();

/// Lines "key = value" (or "key value"); '#' starts a comment. Keys: X, h, x0, quadrature,
/// left_bc, tol, max_iters, eta_star, S, schedule, guard, and R / n_osc. Each R or n_osc
/// pair adds one profile; a profile list may also be given as "profiles = 3:35, 4.5:55".
SturmRunConfig parse_run_config(std::istream& in);
SturmRunConfig load_run_config(const std::string& path);

}  // namespace prqi::sturm
