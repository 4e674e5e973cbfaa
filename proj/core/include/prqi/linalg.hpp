#pragma once

#include <cstddef>

#include "prqi/complex_vector.hpp"
#include "prqi/hermitian_operator.hpp"

namespace prqi {

/// x*Ax / x*x. The roundoff-sized imaginary part is dropped.
double rayleigh_quotient(const HermitianOperator& a, const ComplexVector& x);

/// x*Ax / x*Mx.
double generalized_rayleigh_quotient(const GeneralizedPair& p, const ComplexVector& x);

/// (A - mu I) x. Intended for unit x.
ComplexVector residual(const HermitianOperator& a, double mu, const ComplexVector& x);

/// (A - mu M) x.
ComplexVector generalized_residual(const GeneralizedPair& p, double mu, const ComplexVector& x);

/// sqrt(x*Mx). Throws DomainError if the quadratic form is negative beyond roundoff.
double m_norm(const HermitianOperator& m, const ComplexVector& x);

/// x / ||x||_M with the phase convention applied.
ComplexVector m_normalize(const HermitianOperator& m, ComplexVector x);

}  // namespace prqi
