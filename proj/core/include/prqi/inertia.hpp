#pragma once

#include <cstddef>

#include "prqi/hermitian_operator.hpp"

namespace prqi {

/// Counts of negative, zero and positive eigenvalues of a Hermitian matrix.
struct Inertia {
  std::size_t negative = 0;
  std::size_t zero = 0;
  std::size_t positive = 0;
};

/// Inertia of A - lambda M. Real symmetric tridiagonal pairs use the LDL^T Sturm recurrence;
/// everything else uses a dense Bunch-Kaufman factorization. By Sylvester's law the negative
/// count is the number of generalized eigenvalues below lambda.
Inertia shifted_inertia(const GeneralizedPair& p, double lambda);
Inertia shifted_inertia(const HermitianOperator& a, double lambda);

}  // namespace prqi
