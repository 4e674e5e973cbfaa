#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "prqi/complex_vector.hpp"
#include "prqi/dense.hpp"

namespace prqi {

enum class Storage { dense, tridiagonal, sparse };

std::string_view to_string(Storage storage) noexcept;

struct Triplet {
  std::size_t row = 0;
  std::size_t col = 0;
  Complex value;
};

/// Hermitian matrix A = A*. Only one triangle is stored, so entry(i, j) == conj(entry(j, i))
/// holds bit-exactly for every storage kind.
class HermitianOperator {
 public:
  HermitianOperator() = default;

  /// Reads the lower triangle (including the diagonal) of `m`; the strict upper triangle is
  /// ignored. Diagonal imaginary parts must be roundoff-sized and are dropped.
  static HermitianOperator dense(const ComplexMatrix& m);

  /// Real symmetric tridiagonal matrix; `off_diagonal` holds entries (i+1, i).
  static HermitianOperator tridiagonal(std::vector<double> diagonal,
                                       std::vector<double> off_diagonal);

  /// Coordinate list. Entries may lie in either triangle; an upper entry (i, j) is stored as
  /// (j, i, conj(v)). Duplicates are summed.
  static HermitianOperator sparse(std::size_t n, std::span<const Triplet> entries);

  static HermitianOperator identity(std::size_t n);

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] Storage storage() const noexcept { return storage_; }
  /// True when every stored entry has zero imaginary part.
  [[nodiscard]] bool is_real() const noexcept { return real_; }

  [[nodiscard]] Complex entry(std::size_t i, std::size_t j) const;
  [[nodiscard]] ComplexVector apply(const ComplexVector& x) const;
  [[nodiscard]] ComplexMatrix to_dense() const;
  [[nodiscard]] double frobenius_norm() const;

  /// alpha * A + beta * I, with the same storage kind.
  [[nodiscard]] HermitianOperator affine(double alpha, double beta) const;

  /// Stored lower-triangle entries (row >= col), in column-major order, zeros omitted.
  [[nodiscard]] std::vector<Triplet> lower_triplets() const;

  // Tridiagonal storage only.
  [[nodiscard]] const std::vector<double>& diagonal() const;
  [[nodiscard]] const std::vector<double>& off_diagonal() const;

 private:
  [[nodiscard]] std::size_t packed_index(std::size_t i, std::size_t j) const noexcept;

  std::size_t n_ = 0;
  Storage storage_ = Storage::dense;
  bool real_ = true;
  std::vector<Complex> packed_;        // dense: lower triangle, column-major packed
  std::vector<double> diag_;           // tridiagonal
  std::vector<double> off_;            // tridiagonal
  std::vector<Triplet> coords_;        // sparse: row >= col, sorted by (col, row)
};

/// Pair (A, M) for A v = lambda M v with M Hermitian positive definite.
class GeneralizedPair {
 public:
  /// Throws DimensionError on size mismatch and DomainError when M fails a Cholesky-type
  /// factorization with strictly positive pivots.
  GeneralizedPair(HermitianOperator a, HermitianOperator m);

  [[nodiscard]] const HermitianOperator& a() const noexcept { return a_; }
  [[nodiscard]] const HermitianOperator& m() const noexcept { return m_; }
  [[nodiscard]] std::size_t size() const noexcept { return a_.size(); }

 private:
  HermitianOperator a_;
  HermitianOperator m_;
};

/// True when `m` admits a factorization with all pivots > 0.
bool is_positive_definite(const HermitianOperator& m);

}  // namespace prqi
