#include "prqi/shifted_solve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "prqi/errors.hpp"

namespace prqi {

NearSingularError::NearSingularError(double min_pivot, double max_pivot,
                                     std::optional<ComplexVector> direction)
    : std::runtime_error("near-singular shifted system (min pivot " + std::to_string(min_pivot) +
                         ", max pivot " + std::to_string(max_pivot) + ")"),
      min_pivot_(min_pivot),
      max_pivot_(max_pivot),
      direction_(std::move(direction)) {}

namespace {

void require_nonzero(const ComplexVector& rhs) {
  if (norm(rhs) == 0.0) throw DomainError("shifted solve with a zero right-hand side");
}

bool usable_direction(const ComplexVector& y) { return y.all_finite() && norm(y) > 0.0; }

template <typename Solve>
[[noreturn]] void raise_near_singular(double min_pivot, double max_pivot, Solve&& solve) {
  const double floor =
      std::max(kNearSingularThreshold * max_pivot, std::numeric_limits<double>::min());
  ComplexVector y = solve(floor);
  std::optional<ComplexVector> direction;
  if (usable_direction(y)) direction = std::move(y);
  throw NearSingularError(min_pivot, max_pivot, std::move(direction));
}

bool near_singular(double min_pivot, double max_pivot) {
  return !(min_pivot >= kNearSingularThreshold * max_pivot) || max_pivot == 0.0;
}

// Gaussian elimination with partial pivoting on a tridiagonal matrix, as in LAPACK gtsv.
// Row interchanges create fill in a second superdiagonal.
class BandedLu {
 public:
  BandedLu(std::vector<Complex> sub, std::vector<Complex> diag, std::vector<Complex> super,
           const ComplexVector& rhs)
      : d_(std::move(diag)), du_(std::move(super)), du2_(d_.size(), Complex{}), b_(rhs) {
    const std::size_t n = d_.size();
    if (sub.size() + 1 != n || du_.size() + 1 != n || rhs.size() != n) {
      throw DimensionError("tridiagonal system size mismatch");
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (std::abs(d_[i]) >= std::abs(sub[i])) {
        if (sub[i] != Complex{}) {
          const Complex fact = sub[i] / d_[i];
          d_[i + 1] -= fact * du_[i];
          b_[i + 1] -= fact * b_[i];
        }
      } else {
        const Complex fact = d_[i] / sub[i];
        d_[i] = sub[i];
        const Complex temp = d_[i + 1];
        d_[i + 1] = du_[i] - fact * temp;
        if (i + 2 < n) {
          du2_[i] = du_[i + 1];
          du_[i + 1] = -fact * du2_[i];
        }
        du_[i] = temp;
        std::swap(b_[i], b_[i + 1]);
        b_[i + 1] -= fact * b_[i];
      }
    }
    min_pivot_ = std::numeric_limits<double>::infinity();
    max_pivot_ = 0.0;
    for (const auto& p : d_) {
      min_pivot_ = std::min(min_pivot_, std::abs(p));
      max_pivot_ = std::max(max_pivot_, std::abs(p));
    }
  }

  [[nodiscard]] double min_pivot() const noexcept { return min_pivot_; }
  [[nodiscard]] double max_pivot() const noexcept { return max_pivot_; }

  [[nodiscard]] ComplexVector back_substitute(double pivot_floor) const {
    const std::size_t n = d_.size();
    ComplexVector x(n);
    for (std::size_t i = n; i-- > 0;) {
      Complex s = b_[i];
      if (i + 1 < n) s -= du_[i] * x[i + 1];
      if (i + 2 < n) s -= du2_[i] * x[i + 2];
      x[i] = s / detail::floored_pivot(d_[i], pivot_floor);
    }
    return x;
  }

 private:
  std::vector<Complex> d_;
  std::vector<Complex> du_;
  std::vector<Complex> du2_;
  ComplexVector b_;
  double min_pivot_ = 0.0;
  double max_pivot_ = 0.0;
};

ComplexVector finish(const BandedLu& lu) {
  if (near_singular(lu.min_pivot(), lu.max_pivot())) {
    raise_near_singular(lu.min_pivot(), lu.max_pivot(),
                        [&](double floor) { return lu.back_substitute(floor); });
  }
  return lu.back_substitute(0.0);
}

ComplexVector banded_generalized(const HermitianOperator& a, const HermitianOperator* m,
                                 Complex sigma, const ComplexVector& rhs) {
  const std::size_t n = a.size();
  std::vector<Complex> diag(n);
  std::vector<Complex> sub(n - 1);
  const auto& ad = a.diagonal();
  const auto& ao = a.off_diagonal();
  for (std::size_t i = 0; i < n; ++i) diag[i] = ad[i] - sigma * (m ? m->diagonal()[i] : 1.0);
  for (std::size_t i = 0; i + 1 < n; ++i) sub[i] = ao[i] - (m ? sigma * m->off_diagonal()[i] : 0.0);
  std::vector<Complex> super = sub;
  return finish(BandedLu(std::move(sub), std::move(diag), std::move(super), rhs));
}

}  // namespace

ComplexVector solve_tridiagonal(std::vector<Complex> sub, std::vector<Complex> diag,
                                std::vector<Complex> super, const ComplexVector& rhs) {
  require_nonzero(rhs);
  return finish(BandedLu(std::move(sub), std::move(diag), std::move(super), rhs));
}

ComplexVector solve_dense(ComplexMatrix m, const ComplexVector& rhs) {
  require_nonzero(rhs);
  if (m.rows() != rhs.size()) throw DimensionError("dense solve size mismatch");
  const LuFactorization lu(std::move(m));
  if (near_singular(lu.min_pivot(), lu.max_pivot())) {
    raise_near_singular(lu.min_pivot(), lu.max_pivot(),
                        [&](double floor) { return lu.solve(rhs, floor); });
  }
  return lu.solve(rhs);
}

ComplexVector solve_shifted(const HermitianOperator& a, Complex sigma, const ComplexVector& rhs) {
  if (rhs.size() != a.size()) throw DimensionError("shifted solve size mismatch");
  require_nonzero(rhs);
  if (a.storage() == Storage::tridiagonal) return banded_generalized(a, nullptr, sigma, rhs);
  ComplexMatrix m = a.to_dense();
  for (std::size_t i = 0; i < a.size(); ++i) m(i, i) -= sigma;
  return solve_dense(std::move(m), rhs);
}

ComplexVector solve_shifted_generalized(const GeneralizedPair& p, Complex sigma,
                                        const ComplexVector& rhs) {
  if (rhs.size() != p.size()) throw DimensionError("shifted solve size mismatch");
  require_nonzero(rhs);
  if (p.a().storage() == Storage::tridiagonal && p.m().storage() == Storage::tridiagonal) {
    return banded_generalized(p.a(), &p.m(), sigma, rhs);
  }
  ComplexMatrix m = p.a().to_dense();
  const ComplexMatrix mass = p.m().to_dense();
  for (std::size_t j = 0; j < p.size(); ++j)
    for (std::size_t i = 0; i < p.size(); ++i) m(i, j) -= sigma * mass(i, j);
  return solve_dense(std::move(m), rhs);
}

}  // namespace prqi
