#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

#include "prqi/complex_vector.hpp"

namespace prqi {

/// What a gamma rule sees at step k: the current shift, the residual norm at the current
/// iterate (M-residual in generalized mode) and the iterate itself.
struct IterationState {
  std::size_t k = 0;
  double mu = 0.0;
  double residual_norm = 0.0;
  const ComplexVector* x = nullptr;
};

/// Rule producing the imaginary shift gamma_k >= 0 from the current iteration state.
///
/// residual_norm gives locally quadratic convergence and is invariant under A -> aA + bI;
/// residual_norm_squared gives locally cubic convergence. Both satisfy gamma_k <= C ||r_k||^(1+q)
/// with q = 0 and q = 1 respectively.
class GammaSchedule {
 public:
  enum class Kind { residual_norm, residual_norm_squared, constant, custom };
  using Rule = std::function<double(const IterationState&)>;

  static GammaSchedule residual_norm();
  static GammaSchedule residual_norm_squared();
  /// gamma0 = 0 is accepted and turns the simplified iteration into classic RQI.
  static GammaSchedule constant(double gamma0);
  /// The rule must be pure; negative or non-finite outputs raise DomainError at evaluation.
  static GammaSchedule custom(Rule rule, std::string name = "custom");

  /// Accepts "residual", "residual2" and "constant:<value>".
  static GammaSchedule parse(std::string_view text);

  [[nodiscard]] double operator()(const IterationState& state) const;

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  [[nodiscard]] double constant_value() const noexcept { return gamma0_; }
  [[nodiscard]] std::string name() const;

 private:
  GammaSchedule(Kind kind, double gamma0, Rule rule, std::string name)
      : kind_(kind), gamma0_(gamma0), rule_(std::move(rule)), name_(std::move(name)) {}

  Kind kind_;
  double gamma0_ = 0.0;
  Rule rule_;
  std::string name_;
};

}  // namespace prqi
