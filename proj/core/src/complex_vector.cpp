#include "prqi/complex_vector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "prqi/errors.hpp"

namespace prqi {

namespace {

void require_same_size(const ComplexVector& a, const ComplexVector& b) {
  if (a.size() != b.size()) {
    throw DimensionError("vector sizes differ: " + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));
  }
}

// Norm of the component of w orthogonal to unit(u), and |unit(u)* w|.
std::pair<double, double> split_components(const ComplexVector& u, const ComplexVector& w) {
  require_same_size(u, w);
  const double nu = norm(u);
  const double nw = norm(w);
  if (nu == 0.0 || nw == 0.0) {
    throw DomainError("angle with a zero vector is undefined");
  }
  const Complex projection = dot(u, w) / nu;  // coefficient along unit(u)
  double perp = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    perp += std::norm(w[i] - projection * (u[i] / nu));
  }
  return {std::sqrt(perp), std::abs(projection)};
}

}  // namespace

ComplexVector ComplexVector::from_real(std::span<const double> values) {
  ComplexVector v(values.size());
  std::copy(values.begin(), values.end(), v.begin());
  return v;
}

ComplexVector& ComplexVector::operator+=(const ComplexVector& other) {
  require_same_size(*this, other);
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

ComplexVector& ComplexVector::operator-=(const ComplexVector& other) {
  require_same_size(*this, other);
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

ComplexVector& ComplexVector::operator*=(Complex scale) noexcept {
  for (auto& e : entries_) e *= scale;
  return *this;
}

ComplexVector ComplexVector::real_part() const {
  ComplexVector out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = entries_[i].real();
  return out;
}

bool ComplexVector::is_real() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](Complex c) { return c.imag() == 0.0; });
}

bool ComplexVector::all_finite() const noexcept {
  return std::all_of(entries_.begin(), entries_.end(), [](Complex c) {
    return std::isfinite(c.real()) && std::isfinite(c.imag());
  });
}

ComplexVector operator+(ComplexVector lhs, const ComplexVector& rhs) { return lhs += rhs; }
ComplexVector operator-(ComplexVector lhs, const ComplexVector& rhs) { return lhs -= rhs; }
ComplexVector operator*(Complex scale, ComplexVector v) { return v *= scale; }

Complex dot(const ComplexVector& u, const ComplexVector& w) {
  require_same_size(u, w);
  Complex sum{0.0, 0.0};
  for (std::size_t i = 0; i < u.size(); ++i) sum += std::conj(u[i]) * w[i];
  return sum;
}

double norm_squared(const ComplexVector& x) {
  double sum = 0.0;
  for (const auto& e : x) sum += std::norm(e);
  return sum;
}

double norm(const ComplexVector& x) {
  // Scaled accumulation keeps huge shift-invert solutions from overflowing.
  double scale = 0.0;
  for (const auto& e : x) scale = std::max({scale, std::abs(e.real()), std::abs(e.imag())});
  if (scale == 0.0 || !std::isfinite(scale)) return scale;
  double sum = 0.0;
  for (const auto& e : x) sum += std::norm(e / scale);
  return scale * std::sqrt(sum);
}

void apply_phase_convention(ComplexVector& x) {
  std::size_t best = 0;
  double best_abs = -1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double a = std::abs(x[i]);
    if (a > best_abs) {
      best_abs = a;
      best = i;
    }
  }
  if (best_abs <= 0.0) return;
  const Complex rotation = std::conj(x[best]) / best_abs;
  x *= rotation;
  x[best] = Complex{std::abs(x[best]), 0.0};
}

ComplexVector normalize(ComplexVector x) {
  const double n = norm(x);
  if (n == 0.0) throw DomainError("cannot normalize the zero vector");
  if (!std::isfinite(n)) throw DomainError("cannot normalize a non-finite vector");
  x *= Complex{1.0 / n, 0.0};
  apply_phase_convention(x);
  return x;
}

double angle_between(const ComplexVector& u, const ComplexVector& w) {
  const auto [perp, along] = split_components(u, w);
  return std::atan2(perp, along);
}

double tan_angle_between(const ComplexVector& u, const ComplexVector& w) {
  const auto [perp, along] = split_components(u, w);
  if (along == 0.0) return std::numeric_limits<double>::infinity();
  return perp / along;
}

}  // namespace prqi
