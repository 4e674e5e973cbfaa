#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "prqi/complex_vector.hpp"
#include "prqi/dense.hpp"
#include "prqi/hermitian_operator.hpp"

namespace prqi {

/// Test-matrix families.
struct MatrixSpec {
  enum class Kind { diag3, one_two_one, wilkinson, laplace_2d, random_symmetric };

  Kind kind = Kind::one_two_one;
  double s = 0.0;          // diag3: middle eigenvalue, |s| < 1
  std::size_t n = 0;       // one_two_one, random_symmetric: dimension; wilkinson: 2n+1; laplace: n^2
  double density = 0.05;   // random_symmetric: probability of each off-diagonal pair
  std::uint64_t seed = 0;  // random_symmetric

  static MatrixSpec diag3(double s);
  static MatrixSpec one_two_one(std::size_t n);
  static MatrixSpec wilkinson(std::size_t n);
  static MatrixSpec laplace_2d(std::size_t m);
  static MatrixSpec random_symmetric(std::size_t n, double density = 0.05, std::uint64_t seed = 0);

  /// Kind names used on the command line: diag3, 121, wilkinson, laplace, randsym.
  static MatrixSpec from_name(std::string_view name, double size, std::uint64_t seed = 0);

  void validate() const;
  [[nodiscard]] std::size_t dimension() const;
  [[nodiscard]] std::string name() const;
};

/// diag3, 121 and wilkinson are tridiagonal; laplace and randsym are sparse.
HermitianOperator generate(const MatrixSpec& spec);

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // orthonormal columns, phase convention applied
};

/// Cyclic Jacobi eigendecomposition. Throws OracleError after 100 sweeps without convergence.
EigenDecomposition oracle_eig(const HermitianOperator& a);

/// lambda_max - lambda_min.
double spread(const HermitianOperator& a);

/// cos(theta) v_j + sin(theta) w with w a seeded Gaussian combination of the other
/// eigenvectors, normalized. theta must lie strictly inside (0, pi/2).
ComplexVector initial_vector_with_angle(const EigenDecomposition& decomp, std::size_t target_index,
                                        double theta, std::uint64_t seed);

/// Interior barycentric lattice point (i, j, k)/r with i, j, k >= 1.
struct SimplexPoint {
  std::size_t i = 0;
  std::size_t j = 0;
  std::size_t k = 0;
  ComplexVector vector;  // (i, j, k)/r normalized to unit Euclidean norm
};

/// All (r-1)(r-2)/2 interior points of the resolution-r simplex lattice, ordered by i then j.
std::vector<SimplexPoint> simplex_grid(std::size_t resolution);

}  // namespace prqi
