#include "prqi/linalg.hpp"

#include <cmath>

#include "prqi/errors.hpp"

namespace prqi {

namespace {

double real_quotient(Complex numerator, Complex denominator, double scale) {
  const Complex q = numerator / denominator;
  if (std::abs(q.imag()) > 1e-10 * (1.0 + std::abs(q.real()) + scale)) {
    throw DomainError("Rayleigh quotient has a large imaginary part; operator is not Hermitian");
  }
  return q.real();
}

}  // namespace

double rayleigh_quotient(const HermitianOperator& a, const ComplexVector& x) {
  const double xx = norm_squared(x);
  if (xx == 0.0) throw DomainError("Rayleigh quotient of the zero vector");
  const ComplexVector ax = a.apply(x);
  return real_quotient(dot(x, ax), xx, norm(ax) / std::sqrt(xx));
}

double generalized_rayleigh_quotient(const GeneralizedPair& p, const ComplexVector& x) {
  if (norm_squared(x) == 0.0) throw DomainError("Rayleigh quotient of the zero vector");
  const ComplexVector ax = p.a().apply(x);
  const double xmx = m_norm(p.m(), x);
  return real_quotient(dot(x, ax), xmx * xmx, norm(ax) * norm(x) / (xmx * xmx));
}

ComplexVector residual(const HermitianOperator& a, double mu, const ComplexVector& x) {
  ComplexVector r = a.apply(x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= mu * x[i];
  return r;
}

ComplexVector generalized_residual(const GeneralizedPair& p, double mu, const ComplexVector& x) {
  ComplexVector r = p.a().apply(x);
  const ComplexVector mx = p.m().apply(x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= mu * mx[i];
  return r;
}

double m_norm(const HermitianOperator& m, const ComplexVector& x) {
  const Complex q = dot(x, m.apply(x));
  if (q.real() < 0.0) {
    if (q.real() < -1e-14 * norm_squared(x) * (1.0 + m.frobenius_norm())) {
      throw DomainError("negative M-norm quadratic form; M is not positive definite");
    }
    return 0.0;
  }
  return std::sqrt(q.real());
}

ComplexVector m_normalize(const HermitianOperator& m, ComplexVector x) {
  const double nx = m_norm(m, x);
  if (!(nx > 0.0) || !std::isfinite(nx)) throw DomainError("cannot M-normalize this vector");
  x *= 1.0 / nx;
  apply_phase_convention(x);
  return x;
}

}  // namespace prqi
