#include "prqi/dense.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "prqi/errors.hpp"

namespace prqi {

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexVector ComplexMatrix::column(std::size_t j) const {
  ComplexVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void ComplexMatrix::set_column(std::size_t j, const ComplexVector& v) {
  if (v.size() != rows_) throw DimensionError("column length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

ComplexVector ComplexMatrix::apply(const ComplexVector& x) const {
  if (x.size() != cols_) throw DimensionError("matrix-vector size mismatch");
  ComplexVector y(rows_);
  for (std::size_t j = 0; j < cols_; ++j) {
    const Complex xj = x[j];
    if (xj == Complex{}) continue;
    const Complex* col = &data_[j * rows_];
    for (std::size_t i = 0; i < rows_; ++i) y[i] += col[i] * xj;
  }
  return y;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t j = 0; j < cols_; ++j)
    for (std::size_t i = 0; i < rows_; ++i) out(j, i) = std::conj((*this)(i, j));
  return out;
}

double ComplexMatrix::frobenius_norm() const {
  double sum = 0.0;
  for (const auto& e : data_) sum += std::norm(e);
  return std::sqrt(sum);
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product size mismatch");
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex bkj = b(k, j);
      if (bkj == Complex{}) continue;
      for (std::size_t i = 0; i < a.rows(); ++i) c(i, j) += a(i, k) * bkj;
    }
  return c;
}

Complex detail::floored_pivot(Complex pivot, double floor) {
  const double mag = std::abs(pivot);
  if (mag >= floor) return pivot;
  return mag == 0.0 ? Complex{floor, 0.0} : pivot * (floor / mag);
}

LuFactorization::LuFactorization(ComplexMatrix a) : lu_(std::move(a)) {
  const std::size_t n = lu_.rows();
  if (lu_.cols() != n) throw DimensionError("LU factorization needs a square matrix");
  perm_.resize(n);
  for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
  min_pivot_ = std::numeric_limits<double>::infinity();
  max_pivot_ = 0.0;

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(lu_(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));
      std::swap(perm_[k], perm_[p]);
    }
    min_pivot_ = std::min(min_pivot_, best);
    max_pivot_ = std::max(max_pivot_, best);
    if (best == 0.0) continue;
    const Complex pivot = lu_(k, k);
    for (std::size_t i = k + 1; i < n; ++i) lu_(i, k) /= pivot;
    for (std::size_t j = k + 1; j < n; ++j) {
      const Complex ukj = lu_(k, j);
      if (ukj == Complex{}) continue;
      for (std::size_t i = k + 1; i < n; ++i) lu_(i, j) -= lu_(i, k) * ukj;
    }
  }
  if (n == 0) min_pivot_ = 0.0;
}

ComplexVector LuFactorization::solve(const ComplexVector& rhs, double pivot_floor) const {
  const std::size_t n = lu_.rows();
  if (rhs.size() != n) throw DimensionError("LU solve size mismatch");
  ComplexVector y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = rhs[perm_[i]];
  for (std::size_t j = 0; j < n; ++j) {
    const Complex yj = y[j];
    for (std::size_t i = j + 1; i < n; ++i) y[i] -= lu_(i, j) * yj;
  }
  for (std::size_t j = n; j-- > 0;) {
    y[j] /= detail::floored_pivot(lu_(j, j), pivot_floor);
    const Complex yj = y[j];
    for (std::size_t i = 0; i < j; ++i) y[i] -= lu_(i, j) * yj;
  }
  return y;
}

}  // namespace prqi
