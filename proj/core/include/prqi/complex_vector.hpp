#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace prqi {

using Complex = std::complex<double>;

/// Dense complex n-vector. Iterates, right-hand sides and residuals all use this type.
class ComplexVector {
 public:
  ComplexVector() = default;
  explicit ComplexVector(std::size_t n) : entries_(n) {}
  ComplexVector(std::initializer_list<Complex> values) : entries_(values) {}
  explicit ComplexVector(std::vector<Complex> values) : entries_(std::move(values)) {}

  static ComplexVector from_real(std::span<const double> values);

  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
  [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }

  Complex& operator[](std::size_t i) { return entries_[i]; }
  const Complex& operator[](std::size_t i) const { return entries_[i]; }

  [[nodiscard]] std::span<Complex> span() noexcept { return entries_; }
  [[nodiscard]] std::span<const Complex> span() const noexcept { return entries_; }
  [[nodiscard]] const std::vector<Complex>& entries() const noexcept { return entries_; }

  auto begin() noexcept { return entries_.begin(); }
  auto end() noexcept { return entries_.end(); }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  ComplexVector& operator+=(const ComplexVector& other);
  ComplexVector& operator-=(const ComplexVector& other);
  ComplexVector& operator*=(Complex scale) noexcept;

  /// Component-wise real part, as a complex vector with zero imaginary parts.
  [[nodiscard]] ComplexVector real_part() const;
  [[nodiscard]] bool is_real() const noexcept;
  [[nodiscard]] bool all_finite() const noexcept;

  friend bool operator==(const ComplexVector&, const ComplexVector&) = default;

 private:
  std::vector<Complex> entries_;
};

ComplexVector operator+(ComplexVector lhs, const ComplexVector& rhs);
ComplexVector operator-(ComplexVector lhs, const ComplexVector& rhs);
ComplexVector operator*(Complex scale, ComplexVector v);

/// Conjugate-linear in the first argument: returns u* w.
Complex dot(const ComplexVector& u, const ComplexVector& w);
double norm(const ComplexVector& x);
double norm_squared(const ComplexVector& x);

/// Rotates x so that its entry of largest modulus is real and nonnegative.
void apply_phase_convention(ComplexVector& x);

/// Euclidean normalization followed by the phase convention. Throws DomainError on x = 0.
ComplexVector normalize(ComplexVector x);

/// Angle in [0, pi/2] between span{u} and span{w}.
double angle_between(const ComplexVector& u, const ComplexVector& w);

/// tan of angle_between, computed without forming the angle (accurate for tiny angles).
double tan_angle_between(const ComplexVector& u, const ComplexVector& w);

}  // namespace prqi
