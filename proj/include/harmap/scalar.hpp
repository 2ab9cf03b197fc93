#pragma once

#include <complex>
#include <concepts>
#include <type_traits>

#include "harmap/gaussian_rational.hpp"

namespace harmap {

using Complex = std::complex<double>;

// Coefficient types shared by the exact and the floating-point algebra.
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<GaussianRational> {
  static constexpr bool exact = true;
  static GaussianRational zero() { return {}; }
  static GaussianRational one() { return {1}; }
  static GaussianRational from_int(long n) { return {n}; }
  static bool is_zero(const GaussianRational& x) { return x.is_zero(); }
  static GaussianRational conj(const GaussianRational& x) { return x.conj(); }
  static Complex to_complex(const GaussianRational& x) { return x.to_complex(); }
};

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static Complex zero() { return {}; }
  static Complex one() { return {1.0, 0.0}; }
  static Complex from_int(long n) { return {static_cast<double>(n), 0.0}; }
  static bool is_zero(const Complex& x) { return x == Complex{}; }
  static Complex conj(const Complex& x) { return std::conj(x); }
  static Complex to_complex(const Complex& x) { return x; }
};

template <class T>
concept Scalar = requires { ScalarTraits<T>::exact; };

template <class T>
concept ExactScalar = Scalar<T> && ScalarTraits<T>::exact;

}  // namespace harmap
