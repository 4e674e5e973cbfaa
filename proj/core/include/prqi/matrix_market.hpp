#pragma once

#include <iosfwd>
#include <string>

#include "prqi/complex_vector.hpp"
#include "prqi/hermitian_operator.hpp"

namespace prqi {

/// Reads a Matrix Market matrix (coordinate or array; real, integer or complex; general,
/// symmetric or hermitian). General matrices must be Hermitian to within 1e-12 relative.
/// Real coordinate matrices with bandwidth one are stored as tridiagonal, other coordinate
/// matrices as sparse, arrays as dense.
HermitianOperator read_matrix_market(std::istream& in);
HermitianOperator read_matrix_market(const std::string& path);

/// Writes the lower triangle in coordinate format ("symmetric" when real, "hermitian"
/// otherwise) with 17 significant digits.
void write_matrix_market(std::ostream& out, const HermitianOperator& a);
void write_matrix_market(const std::string& path, const HermitianOperator& a);

/// Reads a vector from a single-column Matrix Market array, or from plain text with one
/// value per line ("re" or "re im").
ComplexVector read_vector(std::istream& in);
ComplexVector read_vector(const std::string& path);

/// Single-column Matrix Market array, real when every entry is real.
void write_vector(std::ostream& out, const ComplexVector& x);
void write_vector(const std::string& path, const ComplexVector& x);

}  // namespace prqi
