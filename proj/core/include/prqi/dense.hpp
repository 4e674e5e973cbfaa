#pragma once

#include <cstddef>
#include <vector>

#include "prqi/complex_vector.hpp"

namespace prqi {

/// Column-major dense complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static ComplexMatrix identity(std::size_t n);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[j * rows_ + i]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[j * rows_ + i]; }

  [[nodiscard]] ComplexVector column(std::size_t j) const;
  void set_column(std::size_t j, const ComplexVector& v);

  [[nodiscard]] ComplexVector apply(const ComplexVector& x) const;
  /// Conjugate transpose.
  [[nodiscard]] ComplexMatrix adjoint() const;
  [[nodiscard]] double frobenius_norm() const;

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// LU factorization with partial (row) pivoting of a square complex matrix.
class LuFactorization {
 public:
  explicit LuFactorization(ComplexMatrix a);

  /// Pivots smaller in modulus than `pivot_floor` are replaced by `pivot_floor` (same phase)
  /// during back substitution, which lets callers recover a direction from a singular matrix.
  [[nodiscard]] ComplexVector solve(const ComplexVector& rhs, double pivot_floor = 0.0) const;

  [[nodiscard]] double min_pivot() const noexcept { return min_pivot_; }
  [[nodiscard]] double max_pivot() const noexcept { return max_pivot_; }
  [[nodiscard]] std::size_t size() const noexcept { return lu_.rows(); }

 private:
  ComplexMatrix lu_;
  std::vector<std::size_t> perm_;
  double min_pivot_ = 0.0;
  double max_pivot_ = 0.0;
};

namespace detail {
/// `pivot` if |pivot| >= floor, otherwise a value of modulus `floor` with the same phase.
Complex floored_pivot(Complex pivot, double floor);
}  // namespace detail

}  // namespace prqi
