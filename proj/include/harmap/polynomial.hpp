#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "harmap/errors.hpp"
#include "harmap/scalar.hpp"

namespace harmap {

/// Polynomial degree with a distinguished minus-infinity value for the zero
/// polynomial.  Minus infinity compares below every finite degree and absorbs
/// addition.
class Degree {
 public:
  constexpr Degree() = default;
  constexpr explicit Degree(std::size_t d) : value_(d) {}

  static constexpr Degree minus_infinity() { return Degree(); }

  constexpr bool is_minus_infinity() const { return !value_.has_value(); }

  std::size_t value() const {
    if (!value_) throw PreconditionError("degree of the zero polynomial is minus infinity");
    return *value_;
  }

  /// Finite value, or `fallback` for minus infinity.
  constexpr long value_or(long fallback) const {
    return value_ ? static_cast<long>(*value_) : fallback;
  }

  friend constexpr Degree operator+(Degree a, Degree b) {
    if (!a.value_ || !b.value_) return minus_infinity();
    return Degree(*a.value_ + *b.value_);
  }

  friend constexpr bool operator==(Degree a, Degree b) = default;
  friend constexpr std::strong_ordering operator<=>(Degree a, Degree b) {
    if (!a.value_ || !b.value_) return a.value_.has_value() <=> b.value_.has_value();
    return *a.value_ <=> *b.value_;
  }

  friend std::ostream& operator<<(std::ostream& os, Degree d) {
    if (d.is_minus_infinity()) return os << "-inf";
    return os << *d.value_;
  }

 private:
  std::optional<std::size_t> value_;
};

/// Univariate polynomial in z, coefficients in ascending powers with no
/// trailing zeros.  The zero polynomial is the empty coefficient sequence.
template <Scalar T>
class Polynomial {
  using Traits = ScalarTraits<T>;

 public:
  using value_type = T;

  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<T> coeffs) : coeffs_(coeffs) { trim(); }

  static Polynomial constant(T c) { return Polynomial(std::vector<T>{std::move(c)}); }

  static Polynomial monomial(T c, std::size_t power) {
    std::vector<T> v(power + 1, Traits::zero());
    v[power] = std::move(c);
    return Polynomial(std::move(v));
  }

  /// Monic polynomial whose roots are `roots` (with multiplicity).
  static Polynomial from_roots(std::span<const T> roots) {
    Polynomial out = constant(Traits::one());
    for (const T& x : roots) out = out * Polynomial({-x, Traits::one()});
    return out;
  }

  Degree degree() const {
    return coeffs_.empty() ? Degree::minus_infinity() : Degree(coeffs_.size() - 1);
  }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  std::size_t size() const { return coeffs_.size(); }

  std::span<const T> coeffs() const { return coeffs_; }

  /// Coefficient of z^n (zero past the degree).
  T operator[](std::size_t n) const { return n < coeffs_.size() ? coeffs_[n] : Traits::zero(); }

  const T& leading() const {
    if (coeffs_.empty()) throw PreconditionError("leading coefficient of the zero polynomial");
    return coeffs_.back();
  }

  /// Dense coefficient vector of length n (padded with zeros).  Requires deg < n.
  std::vector<T> padded(std::size_t n) const {
    if (coeffs_.size() > n) throw PreconditionError("polynomial does not fit the requested length");
    std::vector<T> v(coeffs_);
    v.resize(n, Traits::zero());
    return v;
  }

  /// Terms of degree ≤ d.
  Polynomial truncated(std::size_t d) const {
    if (coeffs_.size() <= d + 1) return *this;
    return Polynomial(std::vector<T>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(d + 1)));
  }

  Polynomial derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<T> d;
    d.reserve(coeffs_.size() - 1);
    for (std::size_t n = 1; n < coeffs_.size(); ++n)
      d.push_back(coeffs_[n] * Traits::from_int(static_cast<long>(n)));
    return Polynomial(std::move(d));
  }

  /// Coefficient-wise conjugate.
  Polynomial conj() const {
    std::vector<T> v;
    v.reserve(coeffs_.size());
    for (const T& c : coeffs_) v.push_back(Traits::conj(c));
    return Polynomial(std::move(v));
  }

  Polynomial monic() const {
    if (is_zero()) return {};
    T inv = Traits::one() / leading();
    return *this * inv;
  }

  template <class Arg>
  auto operator()(const Arg& z) const {
    Arg acc{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + convert<Arg>(*it);
    return acc;
  }

  Polynomial<Complex> to_complex() const {
    std::vector<Complex> v;
    v.reserve(coeffs_.size());
    for (const T& c : coeffs_) v.push_back(Traits::to_complex(c));
    return Polynomial<Complex>(std::move(v));
  }

  Polynomial operator-() const {
    std::vector<T> v;
    v.reserve(coeffs_.size());
    for (const T& c : coeffs_) v.push_back(-c);
    return Polynomial(std::move(v));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<T> v(std::max(a.size(), b.size()), Traits::zero());
    for (std::size_t n = 0; n < a.size(); ++n) v[n] += a.coeffs_[n];
    for (std::size_t n = 0; n < b.size(); ++n) v[n] += b.coeffs_[n];
    return Polynomial(std::move(v));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> v(a.size() + b.size() - 1, Traits::zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (Traits::is_zero(a.coeffs_[i])) continue;
      for (std::size_t j = 0; j < b.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(std::move(v));
  }
  friend Polynomial operator*(const Polynomial& a, const T& c) {
    if (Traits::is_zero(c)) return {};
    std::vector<T> v(a.coeffs_);
    for (T& x : v) x *= c;
    return Polynomial(std::move(v));
  }
  friend Polynomial operator*(const T& c, const Polynomial& a) { return a * c; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
    if (p.is_zero()) return os << "0";
    bool first = true;
    for (std::size_t n = 0; n < p.size(); ++n) {
      if (Traits::is_zero(p.coeffs_[n])) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << p.coeffs_[n] << ")";
      if (n >= 1) os << "z";
      if (n >= 2) os << "^" << n;
    }
    return os;
  }

 private:
  template <class Arg>
  static Arg convert(const T& c) {
    if constexpr (std::is_same_v<Arg, T>)
      return c;
    else
      return Arg(Traits::to_complex(c));
  }

  void trim() {
    while (!coeffs_.empty() && Traits::is_zero(coeffs_.back())) coeffs_.pop_back();
  }

  std::vector<T> coeffs_;
};

using Poly = Polynomial<GaussianRational>;
using CPoly = Polynomial<Complex>;

template <Scalar T>
using Triple = std::array<Polynomial<T>, 3>;

using PolyTriple = Triple<GaussianRational>;
using CPolyTriple = Triple<Complex>;

template <Scalar T>
struct DivRem {
  Polynomial<T> quotient;
  Polynomial<T> remainder;
};

/// Euclidean division p = q*a + r with deg r < deg a.
template <Scalar T>
DivRem<T> divrem(const Polynomial<T>& p, const Polynomial<T>& a) {
  using Traits = ScalarTraits<T>;
  if (a.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (p.size() < a.size()) return {{}, p};
  std::vector<T> rem(p.coeffs().begin(), p.coeffs().end());
  const std::size_t da = a.size() - 1;
  std::vector<T> quot(p.size() - da, Traits::zero());
  const T lead_inv = Traits::one() / a.leading();
  for (std::size_t n = rem.size(); n-- > da;) {
    if (Traits::is_zero(rem[n])) continue;
    T c = rem[n] * lead_inv;
    for (std::size_t j = 0; j <= da; ++j) rem[n - da + j] -= c * a.coeffs()[j];
    rem[n] = Traits::zero();
    quot[n - da] = std::move(c);
  }
  rem.resize(da);
  return {Polynomial<T>(std::move(quot)), Polynomial<T>(std::move(rem))};
}

template <Scalar T>
Polynomial<T> operator%(const Polynomial<T>& p, const Polynomial<T>& a) {
  return divrem(p, a).remainder;
}

/// Monic greatest common divisor.  Exact coefficients only: the Euclidean
/// remainder sequence is unstable in floating point.
template <ExactScalar T>
Polynomial<T> gcd(Polynomial<T> p, Polynomial<T> q) {
  if (p.is_zero() && q.is_zero()) throw PreconditionError("gcd of two zero polynomials");
  while (!q.is_zero()) {
    Polynomial<T> r = divrem(p, q).remainder;
    p = std::move(q);
    q = r.monic();
  }
  return p.monic();
}

template <ExactScalar T>
Polynomial<T> gcd(std::span<const Polynomial<T>> ps) {
  Polynomial<T> g;
  bool any = false;
  for (const auto& p : ps) {
    if (p.is_zero()) continue;
    g = any ? gcd(g, p) : p.monic();
    any = true;
    if (g.is_constant()) break;
  }
  if (!any) throw PreconditionError("gcd of all-zero polynomials");
  return g;
}

/// Exact quotient; throws when `a` does not divide `p`.
template <ExactScalar T>
Polynomial<T> exact_quotient(const Polynomial<T>& p, const Polynomial<T>& a) {
  auto [q, r] = divrem(p, a);
  if (!r.is_zero()) throw PreconditionError("polynomial division is not exact");
  return q;
}

template <Scalar T>
Degree max_degree(const Triple<T>& t) {
  return std::max({t[0].degree(), t[1].degree(), t[2].degree()});
}

}  // namespace harmap
