#pragma once

#include <array>
#include <cstddef>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "harmap/exact_linalg.hpp"
#include "harmap/numeric.hpp"
#include "harmap/polynomial.hpp"

namespace harmap {

/// A holomorphic map S² → ℂP², f(z) = [p0(z), p1(z), p2(z)], stored as the
/// canonical representative of its projective class: the leading coefficient
/// of the first nonzero component is 1.  Equality of HoloMaps is therefore
/// equality of maps.
class HoloMap {
 public:
  /// Rejects all-zero triples and triples with a common zero.
  static HoloMap validate(PolyTriple p) {
    if (p[0].is_zero() && p[1].is_zero() && p[2].is_zero()) throw NotAMap("all components are zero");
    const Poly g = gcd<GaussianRational>(std::span<const Poly>(p));
    if (!g.is_constant()) {
      std::ostringstream os;
      os << "components share the common factor " << g;
      throw NotAMap(os.str());
    }
    for (const Poly& q : p) {
      if (q.is_zero()) continue;
      const GaussianRational inv = q.leading().inverse();
      for (Poly& r : p) r = r * inv;
      break;
    }
    return HoloMap(std::move(p));
  }

  const PolyTriple& components() const { return p_; }
  const Poly& operator[](std::size_t i) const { return p_[i]; }

  /// Degree k = max deg p_i.
  std::size_t degree() const { return k_; }

  friend bool operator==(const HoloMap&, const HoloMap&) = default;

  friend std::ostream& operator<<(std::ostream& os, const HoloMap& f) {
    return os << "[" << f.p_[0] << ", " << f.p_[1] << ", " << f.p_[2] << "]";
  }

 private:
  explicit HoloMap(PolyTriple p) : p_(std::move(p)), k_(max_degree(p_).value()) {}

  PolyTriple p_;
  std::size_t k_;
};

/// (3 × n) coefficient matrix of a triple, n ≥ max deg + 1.
template <Scalar T>
Matrix<T> coefficient_matrix(const Triple<T>& p, std::size_t n) {
  Matrix<T> m(3, n);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < p[i].size(); ++j) m(i, j) = p[i].coeffs()[j];
  return m;
}

/// Full iff the components are linearly independent (exact rank 3).
inline bool is_full(const HoloMap& f) {
  return exact_rank(coefficient_matrix(f.components(), f.degree() + 1)) == 3;
}

/// h = p ∧ p′ in the component order (01, 02, 12):
/// (p0 p1′ − p0′ p1, p0 p2′ − p0′ p2, p1 p2′ − p1′ p2).
template <Scalar T>
Triple<T> wedge(const Triple<T>& p) {
  const Triple<T> d{p[0].derivative(), p[1].derivative(), p[2].derivative()};
  return {p[0] * d[1] - d[0] * p[1], p[0] * d[2] - d[0] * p[2], p[1] * d[2] - d[1] * p[2]};
}

inline PolyTriple wedge_curve(const HoloMap& f) { return wedge(f.components()); }

/// Vector w with x · w = det(x, p, p′) for the wedge h of (p, p′); a vector x
/// lies in the plane spanned by p and p′ iff x · w = 0.
template <class P>
std::array<P, 3> plane_normal(const std::array<P, 3>& h) {
  return {h[2], -h[1], h[0]};
}

/// Ramification divisor: the finite points are the roots of a monic
/// polynomial, the point ∞ is carried as a separate multiplicity.
class Divisor {
 public:
  Divisor() : finite_(Poly::constant(1)) {}
  Divisor(const Poly& finite, std::size_t inf) : finite_(finite.monic()), inf_(inf) {
    if (finite.is_zero()) throw PreconditionError("divisor polynomial must be nonzero");
  }

  const Poly& finite_part() const { return finite_; }
  std::size_t infinity_multiplicity() const { return inf_; }
  std::size_t total_degree() const { return finite_.degree().value() + inf_; }
  bool empty() const { return total_degree() == 0; }

  /// Float approximations of the finite points (advisory).
  std::vector<Complex> roots_approx() const { return numeric::roots(finite_.to_complex()); }

  friend bool operator==(const Divisor&, const Divisor&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Divisor& d) {
    return os << "<finite: " << d.finite_ << ", inf: " << d.inf_ << ">";
  }

 private:
  Poly finite_;
  std::size_t inf_ = 0;
};

/// First associated curve f₁ = [q] into G₂(ℂ³) ≅ ℂP², degree 2k − 2 − r.
struct AssociatedCurve {
  PolyTriple q;
  std::size_t degree = 0;
};

struct RamificationData {
  Divisor divisor;
  AssociatedCurve curve;
  std::size_t index() const { return divisor.total_degree(); }
};

/// Splits h = p ∧ p′ as b · q with b the monic gcd of the h_i.  The index is
/// r = (2k − 2) − max deg q_i; the ∞ multiplicity is r − deg b.
inline RamificationData ramification_data(const HoloMap& f) {
  if (!is_full(f)) throw NotFull("image lies in a projective line");
  const PolyTriple h = wedge_curve(f);
  if (h[0].is_zero() && h[1].is_zero() && h[2].is_zero()) throw NotFull("p and p' are everywhere dependent");
  const Poly b = gcd<GaussianRational>(std::span<const Poly>(h));
  PolyTriple q{exact_quotient(h[0], b), exact_quotient(h[1], b), exact_quotient(h[2], b)};
  const std::size_t top = 2 * f.degree() - 2;
  const std::size_t dq = max_degree(q).value();
  const std::size_t r = top - dq;
  const std::size_t db = b.degree().value();
  return {Divisor(b, r - db), AssociatedCurve{std::move(q), dq}};
}

/// [A · p] for an invertible exact 3 × 3 matrix A.
inline HoloMap apply_automorphism(const Matrix<GaussianRational>& a, const HoloMap& f) {
  if (a.rows() != 3 || a.cols() != 3) throw PreconditionError("automorphism must be 3 x 3");
  if (exact_determinant(a).is_zero()) throw SingularMatrix("automorphism matrix is singular");
  PolyTriple out;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) out[i] = out[i] + f[j] * a(i, j);
  return HoloMap::validate(std::move(out));
}

/// Coefficient-conjugated triple: the holomorphic model of f composed with
/// z ↦ z̄.  An involution.
inline HoloMap mirror(const HoloMap& f) {
  return HoloMap::validate({f[0].conj(), f[1].conj(), f[2].conj()});
}

/// Checks p1(p0p2′−p0′p2) − p2(p0p1′−p0′p1) = p0(p1p2′−p1′p2) exactly.
inline bool dependency_identity_check(const PolyTriple& p) {
  const PolyTriple h = wedge(p);
  return p[1] * h[1] - p[2] * h[0] == p[0] * h[2];
}

inline bool dependency_identity_check(const HoloMap& f) { return dependency_identity_check(f.components()); }

}  // namespace harmap
