#pragma once

#include <array>
#include <map>
#include <ostream>
#include <utility>
#include <vector>

#include "harmap/polynomial.hpp"

namespace harmap {

/// Polynomial in (z, z̄): Σ c_ij z^i z̄^j with finitely many nonzero c_ij.
/// Used for the exact lifts of smooth, non-holomorphic maps.
template <Scalar T>
class BiPolynomial {
  using Traits = ScalarTraits<T>;

 public:
  using Exponent = std::pair<std::size_t, std::size_t>;
  using Terms = std::map<Exponent, T>;

  BiPolynomial() = default;
  explicit BiPolynomial(Terms terms) : terms_(std::move(terms)) { prune(); }

  /// p(z) viewed as a bi-polynomial.
  static BiPolynomial holomorphic(const Polynomial<T>& p) {
    Terms t;
    for (std::size_t i = 0; i < p.size(); ++i)
      if (!Traits::is_zero(p.coeffs()[i])) t.emplace(Exponent{i, 0}, p.coeffs()[i]);
    return BiPolynomial(std::move(t));
  }

  /// conj(p)(z̄) = Σ conj(c_j) z̄^j.
  static BiPolynomial antiholomorphic_conj(const Polynomial<T>& p) {
    Terms t;
    for (std::size_t j = 0; j < p.size(); ++j)
      if (!Traits::is_zero(p.coeffs()[j])) t.emplace(Exponent{0, j}, Traits::conj(p.coeffs()[j]));
    return BiPolynomial(std::move(t));
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Largest z-exponent and largest z̄-exponent over all terms ({0,0} for zero).
  Exponent bidegree() const {
    Exponent d{0, 0};
    for (const auto& [e, c] : terms_) {
      d.first = std::max(d.first, e.first);
      d.second = std::max(d.second, e.second);
    }
    return d;
  }

  /// Swaps (i, j) and conjugates coefficients: the bi-polynomial of the
  /// complex conjugate function.
  BiPolynomial conj() const {
    Terms t;
    for (const auto& [e, c] : terms_) t.emplace(Exponent{e.second, e.first}, Traits::conj(c));
    return BiPolynomial(std::move(t));
  }

  /// Formal partial derivative in z.
  BiPolynomial dz() const {
    Terms t;
    for (const auto& [e, c] : terms_)
      if (e.first > 0) t.emplace(Exponent{e.first - 1, e.second}, c * Traits::from_int(static_cast<long>(e.first)));
    return BiPolynomial(std::move(t));
  }

  /// Formal partial derivative in z̄.
  BiPolynomial dzbar() const {
    Terms t;
    for (const auto& [e, c] : terms_)
      if (e.second > 0) t.emplace(Exponent{e.first, e.second - 1}, c * Traits::from_int(static_cast<long>(e.second)));
    return BiPolynomial(std::move(t));
  }

  /// Evaluates at the point z with z̄ = conj(z).
  Complex operator()(Complex z) const {
    auto [dz_max, dzb_max] = bidegree();
    std::vector<Complex> zp(dz_max + 1), wp(dzb_max + 1);
    const Complex w = std::conj(z);
    zp[0] = wp[0] = 1.0;
    for (std::size_t n = 1; n < zp.size(); ++n) zp[n] = zp[n - 1] * z;
    for (std::size_t n = 1; n < wp.size(); ++n) wp[n] = wp[n - 1] * w;
    Complex acc{};
    for (const auto& [e, c] : terms_) acc += Traits::to_complex(c) * zp[e.first] * wp[e.second];
    return acc;
  }

  BiPolynomial<Complex> to_complex() const {
    typename BiPolynomial<Complex>::Terms t;
    for (const auto& [e, c] : terms_) t.emplace(e, Traits::to_complex(c));
    return BiPolynomial<Complex>(std::move(t));
  }

  BiPolynomial operator-() const {
    Terms t;
    for (const auto& [e, c] : terms_) t.emplace(e, -c);
    return BiPolynomial(std::move(t));
  }

  BiPolynomial& operator+=(const BiPolynomial& o) {
    for (const auto& [e, c] : o.terms_) accumulate(terms_, e, c);
    prune();
    return *this;
  }
  BiPolynomial& operator-=(const BiPolynomial& o) { return *this += -o; }

  friend BiPolynomial operator+(BiPolynomial a, const BiPolynomial& b) { return a += b; }
  friend BiPolynomial operator-(BiPolynomial a, const BiPolynomial& b) { return a -= b; }

  friend BiPolynomial operator*(const BiPolynomial& a, const BiPolynomial& b) {
    Terms t;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_)
        accumulate(t, Exponent{ea.first + eb.first, ea.second + eb.second}, ca * cb);
    return BiPolynomial(std::move(t));
  }

  friend bool operator==(const BiPolynomial& a, const BiPolynomial& b) { return a.terms_ == b.terms_; }

  friend std::ostream& operator<<(std::ostream& os, const BiPolynomial& q) {
    if (q.is_zero()) return os << "0";
    bool first = true;
    for (const auto& [e, c] : q.terms_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << c << ")z^" << e.first << "zb^" << e.second;
    }
    return os;
  }

 private:
  static void accumulate(Terms& t, const Exponent& e, const T& c) {
    auto [it, inserted] = t.try_emplace(e, c);
    if (!inserted) it->second += c;
  }

  void prune() {
    std::erase_if(terms_, [](const auto& kv) { return Traits::is_zero(kv.second); });
  }

  Terms terms_;
};

using BiPoly = BiPolynomial<GaussianRational>;
using CBiPoly = BiPolynomial<Complex>;

template <Scalar T>
using BiTriple = std::array<BiPolynomial<T>, 3>;

/// ⟨u, v⟩(z, z̄) = Σ u_i(z) · conj(v_i)(z̄).
template <Scalar T>
BiPolynomial<T> hermitian_pairing(const Triple<T>& u, const Triple<T>& v) {
  BiPolynomial<T> out;
  for (std::size_t i = 0; i < 3; ++i)
    out += BiPolynomial<T>::holomorphic(u[i]) * BiPolynomial<T>::antiholomorphic_conj(v[i]);
  return out;
}

/// ⟨V, p⟩ for a bi-polynomial vector V and a holomorphic triple p.
template <Scalar T>
BiPolynomial<T> hermitian_pairing(const BiTriple<T>& u, const Triple<T>& v) {
  BiPolynomial<T> out;
  for (std::size_t i = 0; i < 3; ++i) out += u[i] * BiPolynomial<T>::antiholomorphic_conj(v[i]);
  return out;
}

}  // namespace harmap
