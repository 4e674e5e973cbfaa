#include "prqi/solvers.hpp"

#include <cmath>
#include <functional>
#include <string>
#include <utility>

#include "prqi/errors.hpp"
#include "prqi/linalg.hpp"
#include "prqi/shifted_solve.hpp"

namespace prqi {

void StoppingCriteria::validate() const {
  if (!(tol > 0.0)) throw DomainError("stopping tolerance must be positive");
  if (max_iters < 1) throw DomainError("max_iters must be at least 1");
}

void LocalizationGuard::validate(std::size_t n) const {
  if (tail_start_index >= n) throw DomainError("guard tail start index out of range");
  if (!(eta_star > 0.0 && eta_star < 1.0)) throw DomainError("guard threshold must lie in (0, 1)");
}

std::string_view to_string(Status status) noexcept {
  switch (status) {
    case Status::converged:
      return "converged";
    case Status::max_iters_exceeded:
      return "max_iters_exceeded";
    case Status::guard_aborted:
      return "guard_aborted";
    case Status::near_singular_converged:
      return "near_singular_converged";
  }
  return "unknown";
}

double eta(const ComplexVector& x, const LocalizationGuard& guard) {
  const double total = norm(x);
  if (total == 0.0) throw DomainError("eta of the zero vector");
  if (guard.tail_start_index >= x.size()) return 0.0;
  ComplexVector tail(std::vector<Complex>(x.begin() + static_cast<std::ptrdiff_t>(guard.tail_start_index),
                                          x.end()));
  return norm(tail) / total;
}

double convergence_order_estimate(std::span<const double> tan_angles, double floor) {
  std::vector<std::pair<double, double>> points;
  for (std::size_t k = 0; k + 1 < tan_angles.size(); ++k) {
    const double a = tan_angles[k];
    const double b = tan_angles[k + 1];
    if (a > floor && b > floor && std::isfinite(a) && std::isfinite(b)) {
      points.emplace_back(std::log(a), std::log(b));
    }
  }
  if (points.size() < 2) throw NotEstimable("fewer than two usable steps for an order fit");
  double mx = 0.0, my = 0.0;
  for (const auto& [px, py] : points) {
    mx += px;
    my += py;
  }
  mx /= static_cast<double>(points.size());
  my /= static_cast<double>(points.size());
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [px, py] : points) {
    sxx += (px - mx) * (px - mx);
    sxy += (px - mx) * (py - my);
  }
  if (sxx == 0.0) throw NotEstimable("degenerate order fit");
  return sxy / sxx;
}

namespace {

struct State {
  ComplexVector x;
  double mu = 0.0;
  double residual_norm = 0.0;
};

// One iteration family: how to normalize, evaluate the shift and residual, and take a step.
struct Problem {
  std::function<ComplexVector(ComplexVector)> normalize;
  std::function<State(ComplexVector)> evaluate;  // x already normalized
  std::function<ComplexVector(double mu, double gamma, const ComplexVector& x)> step;
  const GammaSchedule* schedule = nullptr;  // null: gamma = 0
  const std::optional<LocalizationGuard>* guard = nullptr;
  bool singular_is_error = false;
};

bool passes(const State& s, const StoppingCriteria& stop) {
  const double threshold = stop.scaled ? std::abs(s.mu) * stop.tol : stop.tol;
  return s.residual_norm <= threshold;
}

void finish(SolveOutcome& out, Status status, State s, std::size_t k) {
  out.status = status;
  out.iterations = k;
  out.eigenpair = {s.mu, std::move(s.x), s.residual_norm};
}

SolveOutcome run(const Problem& pb, const ComplexVector& x0, const StoppingCriteria& stop,
                 const TraceOptions& opts) {
  stop.validate();
  const bool guarded = pb.guard && pb.guard->has_value();
  if (guarded) (*pb.guard)->validate(x0.size());

  SolveOutcome out;
  State s = pb.evaluate(pb.normalize(x0));
  std::optional<State> fired;

  for (std::size_t k = 0;; ++k) {
    const double gamma =
        pb.schedule ? (*pb.schedule)(IterationState{k, s.mu, s.residual_norm, &s.x}) : 0.0;
    TraceRecord rec{k, s.mu, gamma, s.residual_norm, std::nullopt, std::nullopt};
    if (opts.target) rec.angle = angle_between(s.x, *opts.target);
    if (guarded) rec.eta = eta(s.x, **pb.guard);
    out.trace.push_back(rec);
    if (opts.keep_iterates) out.iterates.push_back(s.x);

    if (guarded && *rec.eta > (*pb.guard)->eta_star) {
      finish(out, Status::guard_aborted, std::move(s), k);
      return out;
    }
    if (fired) {
      State best = s.residual_norm <= fired->residual_norm ? std::move(s) : std::move(*fired);
      finish(out, Status::converged, std::move(best), k);
      return out;
    }
    if (passes(s, stop)) {
      if (!stop.extra_iteration || k >= stop.max_iters) {
        finish(out, Status::converged, std::move(s), k);
        return out;
      }
      fired = s;
    } else if (k >= stop.max_iters) {
      finish(out, Status::max_iters_exceeded, std::move(s), k);
      return out;
    }

    std::optional<ComplexVector> y;
    std::optional<ComplexVector> direction;
    try {
      y = pb.step(s.mu, gamma, s.x);
      if (!y->all_finite() || norm(*y) == 0.0) y.reset();
    } catch (const NearSingularError& e) {
      if (pb.singular_is_error) throw;
      direction = e.direction();
    }
    if (!y) {
      State best = fired ? std::move(*fired) : std::move(s);
      if (direction) {
        State cand = pb.evaluate(pb.normalize(std::move(*direction)));
        if (cand.residual_norm < best.residual_norm) best = std::move(cand);
      }
      finish(out, fired ? Status::converged : Status::near_singular_converged, std::move(best), k);
      return out;
    }
    s = pb.evaluate(pb.normalize(std::move(*y)));
  }
}

Problem standard_problem(const HermitianOperator& a) {
  Problem pb;
  pb.normalize = [](ComplexVector x) { return normalize(std::move(x)); };
  pb.evaluate = [&a](ComplexVector x) {
    State s;
    s.mu = rayleigh_quotient(a, x);
    s.residual_norm = norm(residual(a, s.mu, x));
    s.x = std::move(x);
    return s;
  };
  return pb;
}

Problem generalized_problem(const GeneralizedPair& p) {
  Problem pb;
  pb.normalize = [&p](ComplexVector x) { return m_normalize(p.m(), std::move(x)); };
  pb.evaluate = [&p](ComplexVector x) {
    State s;
    s.mu = generalized_rayleigh_quotient(p, x);
    s.residual_norm = norm(generalized_residual(p, s.mu, x));
    s.x = std::move(x);
    return s;
  };
  return pb;
}

bool finalizable(const SolveOutcome& out) {
  return out.status == Status::converged || out.status == Status::near_singular_converged;
}

// One classic RQI step from normalize(Re x). Adopted unless it makes the residual worse than
// both the loop result and the tolerance.
void finalize_real_step(SolveOutcome& out, const Problem& pb,
                        const std::function<ComplexVector(double, const ComplexVector&)>& solve,
                        const StoppingCriteria& stop) {
  ComplexVector re = out.eigenpair.vector.real_part();
  if (norm(re) == 0.0) return;
  State s = pb.evaluate(pb.normalize(std::move(re)));
  std::optional<ComplexVector> y;
  try {
    y = solve(s.mu, s.x);
    if (!y->all_finite() || norm(*y) == 0.0) y.reset();
  } catch (const NearSingularError& e) {
    y = e.direction();
  }
  State result = y ? pb.evaluate(pb.normalize(std::move(*y).real_part())) : std::move(s);
  out.finalized_real = true;
  const double threshold = stop.scaled ? std::abs(result.mu) * stop.tol : stop.tol;
  if (result.residual_norm <= std::max(out.eigenpair.residual_norm, threshold)) {
    out.eigenpair = {result.mu, std::move(result.x), result.residual_norm};
  }
}

}  // namespace

SolveOutcome inverse_iteration(const HermitianOperator& a, double mu, const ComplexVector& x0,
                               const StoppingCriteria& stop, const TraceOptions& trace) {
  if (x0.size() != a.size()) throw DimensionError("initial vector size mismatch");
  Problem pb = standard_problem(a);
  pb.step = [&a, mu](double, double, const ComplexVector& x) { return solve_shifted(a, mu, x); };
  pb.singular_is_error = true;
  return run(pb, x0, stop, trace);
}

SolveOutcome classic_rqi(const HermitianOperator& a, const ComplexVector& x0,
                         const StoppingCriteria& stop, const TraceOptions& trace) {
  if (x0.size() != a.size()) throw DimensionError("initial vector size mismatch");
  Problem pb = standard_problem(a);
  pb.step = [&a](double mu, double, const ComplexVector& x) { return solve_shifted(a, mu, x); };
  return run(pb, x0, stop, trace);
}

SolveOutcome prqi_full(const HermitianOperator& a, const ComplexVector& x0,
                       const GammaSchedule& schedule, const StoppingCriteria& stop,
                       const TraceOptions& trace) {
  if (x0.size() != a.size()) throw DimensionError("initial vector size mismatch");
  Problem pb = standard_problem(a);
  const ComplexMatrix dense = a.to_dense();
  pb.step = [&dense](double mu, double gamma, const ComplexVector& x) {
    ComplexMatrix b = dense;
    const std::size_t n = x.size();
    const Complex ig{0.0, gamma};
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) b(i, j) -= ig * x[i] * std::conj(x[j]);
      b(j, j) += ig - mu;
    }
    return solve_dense(std::move(b), x);
  };
  pb.schedule = &schedule;
  return run(pb, x0, stop, trace);
}

SolveOutcome prqi(const HermitianOperator& a, const ComplexVector& x0,
                  const GammaSchedule& schedule, const StoppingCriteria& stop, bool finalize_real,
                  const TraceOptions& trace) {
  if (x0.size() != a.size()) throw DimensionError("initial vector size mismatch");
  Problem pb = standard_problem(a);
  pb.step = [&a](double mu, double gamma, const ComplexVector& x) {
    return solve_shifted(a, Complex{mu, -gamma}, x);
  };
  pb.schedule = &schedule;
  SolveOutcome out = run(pb, x0, stop, trace);
  if (finalize_real && a.is_real() && finalizable(out)) {
    finalize_real_step(
        out, pb, [&a](double mu, const ComplexVector& x) { return solve_shifted(a, mu, x); },
        stop);
  }
  return out;
}

SolveOutcome classic_rqi_generalized(const GeneralizedPair& p, const ComplexVector& x0,
                                     const StoppingCriteria& stop, const TraceOptions& trace) {
  if (x0.size() != p.size()) throw DimensionError("initial vector size mismatch");
  Problem pb = generalized_problem(p);
  pb.step = [&p](double mu, double, const ComplexVector& x) {
    return solve_shifted_generalized(p, mu, p.m().apply(x));
  };
  return run(pb, x0, stop, trace);
}

SolveOutcome prqi_generalized(const GeneralizedPair& p, const ComplexVector& x0,
                              const GammaSchedule& schedule, const StoppingCriteria& stop,
                              const std::optional<LocalizationGuard>& guard, bool finalize_real,
                              const TraceOptions& trace) {
  if (x0.size() != p.size()) throw DimensionError("initial vector size mismatch");
  Problem pb = generalized_problem(p);
  pb.step = [&p](double mu, double gamma, const ComplexVector& x) {
    return solve_shifted_generalized(p, Complex{mu, -gamma}, p.m().apply(x));
  };
  pb.schedule = &schedule;
  pb.guard = &guard;
  SolveOutcome out = run(pb, x0, stop, trace);
  if (finalize_real && p.a().is_real() && p.m().is_real() && finalizable(out)) {
    finalize_real_step(
        out, pb,
        [&p](double mu, const ComplexVector& x) {
          return solve_shifted_generalized(p, mu, p.m().apply(x));
        },
        stop);
  }
  return out;
}

}  // namespace prqi
