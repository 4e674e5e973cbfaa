#pragma once

#include <optional>
#include <stdexcept>

#include "prqi/complex_vector.hpp"
#include "prqi/dense.hpp"
#include "prqi/hermitian_operator.hpp"

namespace prqi {

/// Relative pivot threshold below which a shifted system is reported as singular.
inline constexpr double kNearSingularThreshold = 1e-14;

/// Raised when min |pivot| < kNearSingularThreshold * max |pivot|. Iteration drivers treat
/// this as the shift having reached an eigenvalue.
class NearSingularError : public std::runtime_error {
 public:
  NearSingularError(double min_pivot, double max_pivot, std::optional<ComplexVector> direction);

  [[nodiscard]] double min_pivot() const noexcept { return min_pivot_; }
  [[nodiscard]] double max_pivot() const noexcept { return max_pivot_; }
  /// Solution computed with the tiny pivots clamped to the threshold, when it is finite and
  /// nonzero. Its direction approximates the null vector of the shifted matrix.
  [[nodiscard]] const std::optional<ComplexVector>& direction() const noexcept {
    return direction_;
  }

 private:
  double min_pivot_;
  double max_pivot_;
  std::optional<ComplexVector> direction_;
};

/// Solves (A - sigma I) y = rhs. Tridiagonal storage uses banded elimination with partial
/// pivoting; dense and sparse storage use dense LU with partial pivoting.
ComplexVector solve_shifted(const HermitianOperator& a, Complex sigma, const ComplexVector& rhs);

/// Solves (A - sigma M) y = rhs. Banded when both A and M are tridiagonal, dense otherwise.
ComplexVector solve_shifted_generalized(const GeneralizedPair& p, Complex sigma,
                                        const ComplexVector& rhs);

/// Dense LU solve of a general square system with the same singularity policy.
ComplexVector solve_dense(ComplexMatrix m, const ComplexVector& rhs);

/// Solves a complex tridiagonal system given sub-, main and super-diagonals.
ComplexVector solve_tridiagonal(std::vector<Complex> sub, std::vector<Complex> diag,
                                std::vector<Complex> super, const ComplexVector& rhs);

}  // namespace prqi
