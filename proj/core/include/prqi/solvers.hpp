#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "prqi/complex_vector.hpp"
#include "prqi/hermitian_operator.hpp"
#include "prqi/schedule.hpp"

namespace prqi {

struct StoppingCriteria {
  /// Residual-norm threshold.
  double tol = 1e-12;
  std::size_t max_iters = 100;
  /// Take one more step after the residual test first passes and keep the better iterate.
  bool extra_iteration = true;
  /// Compare against |mu| * tol instead of tol.
  bool scaled = false;

  void validate() const;
};

/// Aborts a generalized solve when the share of the iterate's mass at indices
/// >= tail_start_index exceeds eta_star.
struct LocalizationGuard {
  std::size_t tail_start_index = 0;
  double eta_star = 0.4;

  void validate(std::size_t n) const;
};

enum class Status { converged, max_iters_exceeded, guard_aborted, near_singular_converged };

std::string_view to_string(Status status) noexcept;

struct EigenPair {
  double value = 0.0;
  ComplexVector vector;
  /// Euclidean norm of (A - value I) vector, or of (A - value M) vector when generalized.
  double residual_norm = 0.0;
};

struct TraceRecord {
  std::size_t k = 0;
  double mu = 0.0;
  double gamma = 0.0;
  double residual_norm = 0.0;
  std::optional<double> angle;  // to TraceOptions::target
  std::optional<double> eta;    // when a guard is active
};

struct SolveOutcome {
  Status status = Status::max_iters_exceeded;
  EigenPair eigenpair;
  /// Number of linear solves in the main loop. The finalize-real step is not counted.
  std::size_t iterations = 0;
  /// One record per iterate x_0 .. x_iterations.
  std::vector<TraceRecord> trace;
  /// x_0 .. x_iterations when TraceOptions::keep_iterates is set.
  std::vector<ComplexVector> iterates;
  bool finalized_real = false;
};

/// Test and reporting hooks. Production solves leave both unset.
struct TraceOptions {
  std::optional<ComplexVector> target;
  bool keep_iterates = false;
};

/// Shifted inverse iteration with a fixed real shift. The stopping test and reported
/// eigenvalue use the Rayleigh quotient of the iterate. A singular shift is an error
/// (NearSingularError propagates).
SolveOutcome inverse_iteration(const HermitianOperator& a, double mu, const ComplexVector& x0,
                               const StoppingCriteria& stop, const TraceOptions& trace = {});

/// Classic Rayleigh quotient iteration: solve (A - mu_k I) y = x_k.
SolveOutcome classic_rqi(const HermitianOperator& a, const ComplexVector& x0,
                         const StoppingCriteria& stop, const TraceOptions& trace = {});

/// PRQI with the projected perturbation: solve [A - mu_k I + i gamma_k (I - x_k x_k*)] y = x_k.
/// Always dense; kept as the reference for the simplified form.
SolveOutcome prqi_full(const HermitianOperator& a, const ComplexVector& x0,
                       const GammaSchedule& schedule, const StoppingCriteria& stop,
                       const TraceOptions& trace = {});

/// Simplified PRQI: solve [A - (mu_k - i gamma_k) I] z = x_k. With finalize_real and a real
/// symmetric A, one classic RQI step from normalize(Re x_K) follows the loop.
SolveOutcome prqi(const HermitianOperator& a, const ComplexVector& x0,
                  const GammaSchedule& schedule, const StoppingCriteria& stop,
                  bool finalize_real = false, const TraceOptions& trace = {});

/// Classic RQI for A v = lambda M v: solve [A - R(x_k) M] y = M x_k, M-normalize.
SolveOutcome classic_rqi_generalized(const GeneralizedPair& p, const ComplexVector& x0,
                                     const StoppingCriteria& stop,
                                     const TraceOptions& trace = {});

/// PRQI for A v = lambda M v: solve [A - (mu_k - i gamma_k) M] z = M x_k, M-normalize.
SolveOutcome prqi_generalized(const GeneralizedPair& p, const ComplexVector& x0,
                              const GammaSchedule& schedule, const StoppingCriteria& stop,
                              const std::optional<LocalizationGuard>& guard = std::nullopt,
                              bool finalize_real = false, const TraceOptions& trace = {});

/// ||x[tail_start_index:]|| / ||x||.
double eta(const ComplexVector& x, const LocalizationGuard& guard);

/// Least-squares slope of log tan(theta_{k+1}) against log tan(theta_k), using only pairs
/// where both values exceed `floor`. Throws NotEstimable with fewer than two usable pairs.
double convergence_order_estimate(std::span<const double> tan_angles, double floor = 1e-13);

}  // namespace prqi
