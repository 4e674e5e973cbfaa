#include "prqi/matrices.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "prqi/errors.hpp"
#include "prqi/rng.hpp"

namespace prqi {

MatrixSpec MatrixSpec::diag3(double s) {
  MatrixSpec spec;
  spec.kind = Kind::diag3;
  spec.s = s;
  spec.n = 3;
  return spec;
}

MatrixSpec MatrixSpec::one_two_one(std::size_t n) {
  MatrixSpec spec;
  spec.kind = Kind::one_two_one;
  spec.n = n;
  return spec;
}

MatrixSpec MatrixSpec::wilkinson(std::size_t n) {
  MatrixSpec spec;
  spec.kind = Kind::wilkinson;
  spec.n = n;
  return spec;
}

MatrixSpec MatrixSpec::laplace_2d(std::size_t m) {
  MatrixSpec spec;
  spec.kind = Kind::laplace_2d;
  spec.n = m;
  return spec;
}

MatrixSpec MatrixSpec::random_symmetric(std::size_t n, double density, std::uint64_t seed) {
  MatrixSpec spec;
  spec.kind = Kind::random_symmetric;
  spec.n = n;
  spec.density = density;
  spec.seed = seed;
  return spec;
}

MatrixSpec MatrixSpec::from_name(std::string_view name, double size, std::uint64_t seed) {
  const auto count = [&] {
    if (!(size >= 1.0) || size != std::floor(size)) {
      throw DomainError("matrix size must be a positive integer");
    }
    return static_cast<std::size_t>(size);
  };
  if (name == "diag3") return diag3(size);
  if (name == "121") return one_two_one(count());
  if (name == "wilkinson") return wilkinson(count());
  if (name == "laplace") return laplace_2d(count());
  if (name == "randsym") return random_symmetric(count(), 0.05, seed);
  throw DomainError("unknown matrix kind '" + std::string(name) +
                    "' (expected diag3, 121, wilkinson, laplace or randsym)");
}

void MatrixSpec::validate() const {
  switch (kind) {
    case Kind::diag3:
      if (!(std::abs(s) < 1.0)) throw DomainError("diag3 requires |s| < 1");
      break;
    case Kind::random_symmetric:
      if (!(density > 0.0 && density <= 1.0)) throw DomainError("density must lie in (0, 1]");
      [[fallthrough]];
    default:
      if (n < 1) throw DomainError("matrix dimension parameter must be >= 1");
  }
}

std::size_t MatrixSpec::dimension() const {
  switch (kind) {
    case Kind::diag3:
      return 3;
    case Kind::wilkinson:
      return 2 * n + 1;
    case Kind::laplace_2d:
      return n * n;
    default:
      return n;
  }
}

std::string MatrixSpec::name() const {
  switch (kind) {
    case Kind::diag3:
      return "diag3";
    case Kind::one_two_one:
      return "121";
    case Kind::wilkinson:
      return "wilkinson";
    case Kind::laplace_2d:
      return "laplace";
    case Kind::random_symmetric:
      return "randsym";
  }
  return {};
}

HermitianOperator generate(const MatrixSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case MatrixSpec::Kind::diag3:
      return HermitianOperator::tridiagonal({-1.0, spec.s, 1.0}, {0.0, 0.0});
    case MatrixSpec::Kind::one_two_one:
      return HermitianOperator::tridiagonal(std::vector<double>(spec.n, 2.0),
                                            std::vector<double>(spec.n - 1, 1.0));
    case MatrixSpec::Kind::wilkinson: {
      const std::size_t dim = 2 * spec.n + 1;
      std::vector<double> d(dim);
      for (std::size_t m = 1; m <= dim; ++m) {
        d[m - 1] = std::abs(static_cast<double>(spec.n + 1) - static_cast<double>(m));
      }
      return HermitianOperator::tridiagonal(std::move(d), std::vector<double>(dim - 1, 1.0));
    }
    case MatrixSpec::Kind::laplace_2d: {
      const std::size_t m = spec.n;
      std::vector<Triplet> t;
      for (std::size_t b = 0; b < m; ++b) {
        for (std::size_t i = 0; i < m; ++i) {
          const std::size_t row = b * m + i;
          t.push_back({row, row, 4.0});
          if (i + 1 < m) t.push_back({row + 1, row, -1.0});
          if (b + 1 < m) t.push_back({row + m, row, -1.0});
        }
      }
      return HermitianOperator::sparse(m * m, t);
    }
    case MatrixSpec::Kind::random_symmetric: {
      Rng rng(spec.seed);
      std::vector<Triplet> t;
      for (std::size_t j = 0; j < spec.n; ++j) {
        double d = 0.0;
        while (d == 0.0) d = rng.normal();
        t.push_back({j, j, d});
        for (std::size_t i = j + 1; i < spec.n; ++i) {
          if (rng.uniform() < spec.density) t.push_back({i, j, rng.normal()});
        }
      }
      return HermitianOperator::sparse(spec.n, t);
    }
  }
  throw DomainError("unknown matrix kind");
}

double spread(const HermitianOperator& a) {
  const auto decomp = oracle_eig(a);
  return decomp.values.back() - decomp.values.front();
}

ComplexVector initial_vector_with_angle(const EigenDecomposition& decomp, std::size_t target_index,
                                        double theta, std::uint64_t seed) {
  const std::size_t n = decomp.values.size();
  if (target_index >= n) throw DomainError("target index out of range");
  if (!(theta > 0.0 && theta < std::numbers::pi / 2)) {
    throw DomainError("initial angle must lie strictly inside (0, pi/2)");
  }
  if (n < 2) throw DomainError("initial_vector_with_angle needs dimension >= 2");
  Rng rng(seed);
  ComplexVector w(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double alpha = rng.normal();
    if (j == target_index) continue;
    for (std::size_t i = 0; i < n; ++i) w[i] += alpha * decomp.vectors(i, j);
  }
  // Re-orthogonalize against the target to remove rounding leakage.
  const ComplexVector v = decomp.vectors.column(target_index);
  w -= dot(v, w) * v;
  w *= 1.0 / norm(w);
  ComplexVector x = std::cos(theta) * v + std::sin(theta) * w;
  return normalize(std::move(x));
}

std::vector<SimplexPoint> simplex_grid(std::size_t resolution) {
  if (resolution < 2) throw DomainError("simplex grid resolution must be >= 2");
  std::vector<SimplexPoint> points;
  for (std::size_t i = 1; i < resolution; ++i) {
    for (std::size_t j = 1; i + j < resolution; ++j) {
      const std::size_t k = resolution - i - j;
      ComplexVector v{static_cast<double>(i), static_cast<double>(j), static_cast<double>(k)};
      points.push_back({i, j, k, normalize(std::move(v))});
    }
  }
  return points;
}

}  // namespace prqi
