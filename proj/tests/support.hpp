#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>

#include "prqi/complex_vector.hpp"
#include "prqi/dense.hpp"
#include "prqi/hermitian_operator.hpp"
#include "prqi/rng.hpp"

namespace prqi::testing {

// (G + G*)/2 with standard complex Gaussian G
inline HermitianOperator random_hermitian(std::size_t n, std::uint64_t seed, bool real = false) {
  Rng rng(seed);
  ComplexMatrix g(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      g(i, j) = real ? Complex(rng.normal(), 0.0) : Complex(rng.normal(), rng.normal());
  ComplexMatrix h(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) h(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
  return HermitianOperator::dense(h);
}

inline ComplexVector random_vector(std::size_t n, Rng& rng, bool real = false) {
  ComplexVector x(n);
  for (auto& v : x) v = real ? Complex(rng.normal(), 0.0) : Complex(rng.normal(), rng.normal());
  return normalize(x);
}

inline HermitianOperator diagonal(std::initializer_list<double> values) {
  return HermitianOperator::tridiagonal(std::vector<double>(values),
                                        std::vector<double>(values.size() - 1, 0.0));
}

// |<u, w>| for unit vectors; 1 means equal up to phase
inline double alignment(const ComplexVector& u, const ComplexVector& w) {
  return std::abs(dot(u, w)) / (norm(u) * norm(w));
}

}  // namespace prqi::testing
