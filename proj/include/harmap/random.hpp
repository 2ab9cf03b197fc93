#pragma once

#include <cstdint>
#include <random>

#include "harmap/gaussian_rational.hpp"
#include "harmap/polynomial.hpp"

namespace harmap {

/// Seeded generator with platform-independent draws.  std::mt19937_64 is fully
/// specified by the standard; the distributions are not, so the bounded draws
/// are done here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [lo, hi].
  long uniform_int(long lo, long hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return lo + static_cast<long>(x % span);
  }

  /// Uniform double in [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Gaussian integer with both parts in [-height, height].
  GaussianRational gaussian_integer(long height) {
    long re = uniform_int(-height, height);
    long im = uniform_int(-height, height);
    return {re, im};
  }

  GaussianRational nonzero_gaussian_integer(long height) {
    for (;;) {
      GaussianRational g = gaussian_integer(height);
      if (!g.is_zero()) return g;
    }
  }

  /// Polynomial of degree exactly `degree` with Gaussian-integer coefficients.
  Poly polynomial(std::size_t degree, long height) {
    std::vector<GaussianRational> c;
    c.reserve(degree + 1);
    for (std::size_t n = 0; n < degree; ++n) c.push_back(gaussian_integer(height));
    c.push_back(nonzero_gaussian_integer(height));
    return Poly(std::move(c));
  }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace harmap
