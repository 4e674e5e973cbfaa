#include "prqi/inertia.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "prqi/dense.hpp"

namespace prqi {

namespace {

void tally(Inertia& in, double value) {
  if (value < 0.0) {
    ++in.negative;
  } else if (value > 0.0) {
    ++in.positive;
  } else {
    ++in.zero;
  }
}

Inertia sturm_count(const HermitianOperator& a, const HermitianOperator* m, double lambda) {
  const auto& ad = a.diagonal();
  const auto& ao = a.off_diagonal();
  Inertia in;
  double d = 0.0;
  for (std::size_t i = 0; i < ad.size(); ++i) {
    double di = ad[i] - lambda * (m ? m->diagonal()[i] : 1.0);
    if (i > 0) {
      const double e = ao[i - 1] - (m ? lambda * m->off_diagonal()[i - 1] : 0.0);
      if (d == 0.0) {
        // Recurrence breakdown; the zero pivot is already tallied so callers can perturb.
        if (e != 0.0) di = -std::numeric_limits<double>::infinity();
      } else {
        di -= e * e / d;
      }
    }
    tally(in, di);
    d = di;
  }
  return in;
}

void swap_symmetric(ComplexMatrix& a, std::size_t p, std::size_t q) {
  if (p == q) return;
  const std::size_t n = a.rows();
  for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(q, j));
  for (std::size_t i = 0; i < n; ++i) std::swap(a(i, p), a(i, q));
}

// Bunch-Kaufman symmetric-indefinite factorization on a full Hermitian matrix; only the
// block diagonal signs are kept.
Inertia bunch_kaufman_inertia(ComplexMatrix a) {
  const std::size_t n = a.rows();
  const double alpha = (1.0 + std::sqrt(17.0)) / 8.0;
  Inertia in;
  std::size_t k = 0;
  while (k < n) {
    const double absakk = std::abs(a(k, k).real());
    double colmax = 0.0;
    std::size_t r = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > colmax) {
        colmax = std::abs(a(i, k));
        r = i;
      }
    }
    std::size_t block = 1;
    if (std::max(absakk, colmax) == 0.0) {
      ++in.zero;
      ++k;
      continue;
    }
    if (absakk < alpha * colmax) {
      double rowmax = 0.0;
      for (std::size_t j = k; j < n; ++j) {
        if (j != r) rowmax = std::max(rowmax, std::abs(a(r, j)));
      }
      if (absakk * rowmax >= alpha * colmax * colmax) {
        // keep the 1x1 pivot at k
      } else if (std::abs(a(r, r).real()) >= alpha * rowmax) {
        swap_symmetric(a, k, r);
      } else {
        swap_symmetric(a, k + 1, r);
        block = 2;
      }
    }

    if (block == 1) {
      const double d = a(k, k).real();
      tally(in, d);
      for (std::size_t j = k + 1; j < n; ++j) {
        const Complex akj = a(k, j);
        if (akj == Complex{}) continue;
        for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= a(i, k) * akj / d;
      }
      k += 1;
    } else {
      const Complex e11 = a(k, k), e12 = a(k, k + 1), e21 = a(k + 1, k), e22 = a(k + 1, k + 1);
      const Complex det = e11 * e22 - e12 * e21;
      const double tr = (e11 + e22).real();
      if (det.real() < 0.0) {
        ++in.negative;
        ++in.positive;
      } else if (det.real() == 0.0) {
        ++in.zero;
        tally(in, tr);
      } else {
        tally(in, tr);
        tally(in, tr);
      }
      const Complex i11 = e22 / det, i12 = -e12 / det, i21 = -e21 / det, i22 = e11 / det;
      for (std::size_t j = k + 2; j < n; ++j) {
        const Complex w1 = i11 * a(k, j) + i12 * a(k + 1, j);
        const Complex w2 = i21 * a(k, j) + i22 * a(k + 1, j);
        for (std::size_t i = k + 2; i < n; ++i) a(i, j) -= a(i, k) * w1 + a(i, k + 1) * w2;
      }
      k += 2;
    }
  }
  return in;
}

}  // namespace

Inertia shifted_inertia(const GeneralizedPair& p, double lambda) {
  if (p.a().storage() == Storage::tridiagonal && p.m().storage() == Storage::tridiagonal) {
    return sturm_count(p.a(), &p.m(), lambda);
  }
  ComplexMatrix s = p.a().to_dense();
  const ComplexMatrix m = p.m().to_dense();
  for (std::size_t j = 0; j < p.size(); ++j)
    for (std::size_t i = 0; i < p.size(); ++i) s(i, j) -= lambda * m(i, j);
  return bunch_kaufman_inertia(std::move(s));
}

Inertia shifted_inertia(const HermitianOperator& a, double lambda) {
  if (a.storage() == Storage::tridiagonal) return sturm_count(a, nullptr, lambda);
  ComplexMatrix s = a.to_dense();
  for (std::size_t i = 0; i < a.size(); ++i) s(i, i) -= lambda;
  return bunch_kaufman_inertia(std::move(s));
}

}  // namespace prqi
