#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>

namespace prqi {

/// Seedable generator with platform-independent output: std::mt19937_64 for the raw stream,
/// 53-bit uniforms and Box-Muller normals implemented here (the std distributions are not
/// specified bit-for-bit across standard libraries).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Seed of independent stream `stream` derived from `seed` (splitmix64 mixing).
  static std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform();
  /// Standard normal.
  double normal();
  /// Uniform on {0, ..., n-1}, n >= 1.
  std::size_t index(std::size_t n);

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

}  // namespace prqi
