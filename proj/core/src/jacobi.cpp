#include <algorithm>
#include <cmath>
#include <numeric>
#include <type_traits>
#include <vector>

#include "prqi/errors.hpp"
#include "prqi/matrices.hpp"

namespace prqi {

namespace {

template <typename T>
T conj_of(T v) {
  if constexpr (std::is_same_v<T, double>) {
    return v;
  } else {
    return std::conj(v);
  }
}

// Cyclic Jacobi on a full column-major Hermitian matrix. Each rotation is J = D R, where
// D = diag(1, conj(phase)) makes the (p, q) entry real and R is the real symmetric rotation.
template <typename T>
void cyclic_jacobi(std::vector<T>& a, std::vector<T>& v, std::size_t n) {
  const auto at = [n](std::vector<T>& m, std::size_t i, std::size_t j) -> T& {
    return m[j * n + i];
  };
  double total = 0.0;
  for (const auto& e : a) total += std::norm(e);
  const double fro = std::sqrt(total);
  const auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i)
        if (i != j) s += std::norm(at(a, i, j));
    return std::sqrt(s);
  };

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0;; ++sweep) {
    const double off = off_norm();
    if (off <= 1e-15 * fro || off == 0.0) return;
    if (sweep == kMaxSweeps) {
      if (off <= 1e-12 * fro) return;
      throw OracleError("Jacobi eigendecomposition did not converge in 100 sweeps");
    }
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const T apq = at(a, p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const double app = std::real(at(a, p, p));
        const double aqq = std::real(at(a, q, q));
        // Skip entries already negligible next to both diagonal entries.
        if (mag < 1e-18 * (std::abs(app) + std::abs(aqq)) && sweep > 2) continue;
        rotated = true;
        const T phase = apq / mag;  // apq = mag * phase
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const T e = conj_of(phase);  // D_qq
        // Columns: A <- A J, V <- V J with J = [[c, s], [-s e, c e]].
        for (std::size_t k = 0; k < n; ++k) {
          const T akp = at(a, k, p);
          const T akq = at(a, k, q);
          at(a, k, p) = c * akp - s * e * akq;
          at(a, k, q) = s * akp + c * e * akq;
          const T vkp = at(v, k, p);
          const T vkq = at(v, k, q);
          at(v, k, p) = c * vkp - s * e * vkq;
          at(v, k, q) = s * vkp + c * e * vkq;
        }
        // Rows: A <- J* A.
        const T ec = conj_of(e);
        for (std::size_t k = 0; k < n; ++k) {
          const T apk = at(a, p, k);
          const T aqk = at(a, q, k);
          at(a, p, k) = c * apk - s * ec * aqk;
          at(a, q, k) = s * apk + c * ec * aqk;
        }
        at(a, p, q) = T{};
        at(a, q, p) = T{};
        at(a, p, p) = std::real(at(a, p, p));
        at(a, q, q) = std::real(at(a, q, q));
      }
    }
    if (!rotated) return;
  }
}

template <typename T>
EigenDecomposition decompose(const HermitianOperator& op) {
  const std::size_t n = op.size();
  std::vector<T> a(n * n, T{});
  std::vector<T> v(n * n, T{});
  for (const auto& t : op.lower_triplets()) {
    if constexpr (std::is_same_v<T, double>) {
      a[t.col * n + t.row] = t.value.real();
      a[t.row * n + t.col] = t.value.real();
    } else {
      a[t.col * n + t.row] = t.value;
      a[t.row * n + t.col] = std::conj(t.value);
    }
  }
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = T{1};
  cyclic_jacobi(a, v, n);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return std::real(a[x * n + x]) < std::real(a[y * n + y]);
  });
  EigenDecomposition out;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    out.values[j] = std::real(a[src * n + src]);
    ComplexVector col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = v[src * n + i];
    out.vectors.set_column(j, normalize(std::move(col)));
  }
  return out;
}

}  // namespace

EigenDecomposition oracle_eig(const HermitianOperator& a) {
  if (a.size() == 0) throw DomainError("oracle_eig of an empty matrix");
  if (a.size() > 2000) throw DomainError("oracle_eig is limited to n <= 2000");
  return a.is_real() ? decompose<double>(a) : decompose<Complex>(a);
}

}  // namespace prqi
