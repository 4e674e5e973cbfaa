#include "prqi/hermitian_operator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "prqi/errors.hpp"

namespace prqi {

std::string_view to_string(Storage storage) noexcept {
  switch (storage) {
    case Storage::dense:
      return "dense";
    case Storage::tridiagonal:
      return "tridiagonal";
    case Storage::sparse:
      return "sparse";
  }
  return "unknown";
}

namespace {

Complex checked_diagonal(Complex d, std::size_t i) {
  if (std::abs(d.imag()) > 1e-12 * (1.0 + std::abs(d.real()))) {
    throw DomainError("diagonal entry " + std::to_string(i) + " has a nonzero imaginary part");
  }
  return {d.real(), 0.0};
}

}  // namespace

std::size_t HermitianOperator::packed_index(std::size_t i, std::size_t j) const noexcept {
  // i >= j; column j starts after columns 0..j-1 of lengths n, n-1, ...
  return j * n_ - (j * (j - 1)) / 2 + (i - j);
}

HermitianOperator HermitianOperator::dense(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("Hermitian operator needs a square matrix");
  HermitianOperator op;
  op.n_ = m.rows();
  op.storage_ = Storage::dense;
  op.packed_.resize(op.n_ * (op.n_ + 1) / 2);
  for (std::size_t j = 0; j < op.n_; ++j) {
    for (std::size_t i = j; i < op.n_; ++i) {
      Complex v = m(i, j);
      if (i == j) v = checked_diagonal(v, i);
      if (v.imag() != 0.0) op.real_ = false;
      op.packed_[op.packed_index(i, j)] = v;
    }
  }
  return op;
}

HermitianOperator HermitianOperator::tridiagonal(std::vector<double> diagonal,
                                                 std::vector<double> off_diagonal) {
  if (diagonal.empty()) throw DomainError("tridiagonal operator needs n >= 1");
  if (off_diagonal.size() + 1 != diagonal.size()) {
    throw DimensionError("tridiagonal off-diagonal must have n - 1 entries");
  }
  HermitianOperator op;
  op.n_ = diagonal.size();
  op.storage_ = Storage::tridiagonal;
  op.diag_ = std::move(diagonal);
  op.off_ = std::move(off_diagonal);
  return op;
}

HermitianOperator HermitianOperator::sparse(std::size_t n, std::span<const Triplet> entries) {
  if (n == 0) throw DomainError("sparse operator needs n >= 1");
  std::map<std::pair<std::size_t, std::size_t>, Complex> merged;  // key (col, row)
  for (const auto& t : entries) {
    if (t.row >= n || t.col >= n) throw DimensionError("sparse entry index out of range");
    if (t.row >= t.col) {
      merged[{t.col, t.row}] += t.value;
    } else {
      merged[{t.row, t.col}] += std::conj(t.value);
    }
  }
  HermitianOperator op;
  op.n_ = n;
  op.storage_ = Storage::sparse;
  op.coords_.reserve(merged.size());
  for (const auto& [key, value] : merged) {
    Complex v = value;
    if (key.first == key.second) v = checked_diagonal(v, key.first);
    if (v == Complex{}) continue;
    if (v.imag() != 0.0) op.real_ = false;
    op.coords_.push_back({key.second, key.first, v});
  }
  return op;
}

HermitianOperator HermitianOperator::identity(std::size_t n) {
  return tridiagonal(std::vector<double>(n, 1.0), std::vector<double>(n > 0 ? n - 1 : 0, 0.0));
}

Complex HermitianOperator::entry(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) throw DimensionError("entry index out of range");
  if (i < j) return std::conj(entry(j, i));
  switch (storage_) {
    case Storage::dense:
      return packed_[packed_index(i, j)];
    case Storage::tridiagonal:
      if (i == j) return diag_[i];
      if (i == j + 1) return off_[j];
      return {};
    case Storage::sparse: {
      const auto it = std::lower_bound(
          coords_.begin(), coords_.end(), std::pair{j, i}, [](const Triplet& t, const auto& key) {
            return std::pair{t.col, t.row} < key;
          });
      if (it != coords_.end() && it->row == i && it->col == j) return it->value;
      return {};
    }
  }
  return {};
}

ComplexVector HermitianOperator::apply(const ComplexVector& x) const {
  if (x.size() != n_) throw DimensionError("operator applied to a vector of the wrong size");
  ComplexVector y(n_);
  switch (storage_) {
    case Storage::dense:
      for (std::size_t j = 0; j < n_; ++j) {
        const Complex* col = &packed_[packed_index(j, j)];
        y[j] += col[0] * x[j];
        for (std::size_t i = j + 1; i < n_; ++i) {
          const Complex v = col[i - j];
          y[i] += v * x[j];
          y[j] += std::conj(v) * x[i];
        }
      }
      break;
    case Storage::tridiagonal:
      for (std::size_t i = 0; i < n_; ++i) y[i] = diag_[i] * x[i];
      for (std::size_t i = 0; i + 1 < n_; ++i) {
        y[i + 1] += off_[i] * x[i];
        y[i] += off_[i] * x[i + 1];
      }
      break;
    case Storage::sparse:
      for (const auto& t : coords_) {
        y[t.row] += t.value * x[t.col];
        if (t.row != t.col) y[t.col] += std::conj(t.value) * x[t.row];
      }
      break;
  }
  return y;
}

ComplexMatrix HermitianOperator::to_dense() const {
  ComplexMatrix m(n_, n_);
  for (const auto& t : lower_triplets()) {
    m(t.row, t.col) = t.value;
    m(t.col, t.row) = std::conj(t.value);
  }
  return m;
}

double HermitianOperator::frobenius_norm() const {
  double sum = 0.0;
  for (const auto& t : lower_triplets()) {
    sum += (t.row == t.col ? 1.0 : 2.0) * std::norm(t.value);
  }
  return std::sqrt(sum);
}

HermitianOperator HermitianOperator::affine(double alpha, double beta) const {
  HermitianOperator op = *this;
  switch (storage_) {
    case Storage::dense:
      for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t i = j; i < n_; ++i) {
          auto& v = op.packed_[packed_index(i, j)];
          v *= alpha;
          if (i == j) v += beta;
        }
      break;
    case Storage::tridiagonal:
      for (auto& d : op.diag_) d = alpha * d + beta;
      for (auto& o : op.off_) o *= alpha;
      break;
    case Storage::sparse: {
      std::vector<Triplet> entries;
      entries.reserve(coords_.size() + n_);
      for (const auto& t : coords_) entries.push_back({t.row, t.col, alpha * t.value});
      for (std::size_t i = 0; i < n_; ++i) entries.push_back({i, i, Complex{beta, 0.0}});
      return sparse(n_, entries);
    }
  }
  return op;
}

std::vector<Triplet> HermitianOperator::lower_triplets() const {
  std::vector<Triplet> out;
  switch (storage_) {
    case Storage::dense:
      for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t i = j; i < n_; ++i) {
          const Complex v = packed_[packed_index(i, j)];
          if (v != Complex{}) out.push_back({i, j, v});
        }
      break;
    case Storage::tridiagonal:
      for (std::size_t j = 0; j < n_; ++j) {
        if (diag_[j] != 0.0) out.push_back({j, j, diag_[j]});
        if (j + 1 < n_ && off_[j] != 0.0) out.push_back({j + 1, j, off_[j]});
      }
      break;
    case Storage::sparse:
      out = coords_;
      break;
  }
  return out;
}

const std::vector<double>& HermitianOperator::diagonal() const {
  if (storage_ != Storage::tridiagonal) throw DomainError("diagonal(): not tridiagonal storage");
  return diag_;
}

const std::vector<double>& HermitianOperator::off_diagonal() const {
  if (storage_ != Storage::tridiagonal) {
    throw DomainError("off_diagonal(): not tridiagonal storage");
  }
  return off_;
}

bool is_positive_definite(const HermitianOperator& m) {
  const std::size_t n = m.size();
  if (m.storage() == Storage::tridiagonal) {
    const auto& d = m.diagonal();
    const auto& e = m.off_diagonal();
    double pivot = d[0];
    if (!(pivot > 0.0)) return false;
    for (std::size_t i = 1; i < n; ++i) {
      pivot = d[i] - e[i - 1] * e[i - 1] / pivot;
      if (!(pivot > 0.0)) return false;
    }
    return true;
  }
  // Dense Cholesky, lower triangle in place.
  ComplexMatrix l = m.to_dense();
  for (std::size_t j = 0; j < n; ++j) {
    double pivot = l(j, j).real();
    for (std::size_t k = 0; k < j; ++k) pivot -= std::norm(l(j, k));
    if (!(pivot > 0.0)) return false;
    const double root = std::sqrt(pivot);
    l(j, j) = root;
    for (std::size_t i = j + 1; i < n; ++i) {
      Complex s = l(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / root;
    }
  }
  return true;
}

GeneralizedPair::GeneralizedPair(HermitianOperator a, HermitianOperator m)
    : a_(std::move(a)), m_(std::move(m)) {
  if (a_.size() != m_.size()) throw DimensionError("generalized pair: A and M sizes differ");
  if (!is_positive_definite(m_)) throw DomainError("generalized pair: M is not positive definite");
}

}  // namespace prqi
