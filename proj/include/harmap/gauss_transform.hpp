#pragma once

#include <array>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "harmap/bipoly.hpp"
#include "harmap/holomap.hpp"

namespace harmap {

/// Lift of φ₁ = f₁ ∩ f⊥: V = ⟨p,p⟩ p′ − ⟨p′,p⟩ p, the projection of p′ off p
/// with the denominator ⟨p,p⟩ cleared.  Works for exact and float triples.
template <Scalar T>
BiTriple<T> gauss_lift(const Triple<T>& p) {
  const Triple<T> dp{p[0].derivative(), p[1].derivative(), p[2].derivative()};
  const BiPolynomial<T> pp = hermitian_pairing(p, p);
  const BiPolynomial<T> dpp = hermitian_pairing(dp, p);
  BiTriple<T> v;
  for (std::size_t i = 0; i < 3; ++i)
    v[i] = pp * BiPolynomial<T>::holomorphic(dp[i]) - dpp * BiPolynomial<T>::holomorphic(p[i]);
  return v;
}

/// ⟨V, p⟩; identically zero for the Gauss lift (φ₁(z) ⊥ f(z)).
template <Scalar T>
BiPolynomial<T> orthogonality_defect(const BiTriple<T>& v, const Triple<T>& p) {
  return hermitian_pairing(v, p);
}

/// V · ⋆(p ∧ p′) under the bilinear dot product; identically zero iff V lies
/// in the plane f₁(z).
template <Scalar T>
BiPolynomial<T> plane_defect(const BiTriple<T>& v, const Triple<T>& h) {
  const auto n = plane_normal(h);
  BiPolynomial<T> out;
  for (std::size_t i = 0; i < 3; ++i) out += v[i] * BiPolynomial<T>::holomorphic(n[i]);
  return out;
}

/// Component of the space of harmonic maps S² → ℂP² indexed by degree k′
/// and ramification index r of the source holomorphic map.
struct ComponentDescriptor {
  long harmonic_degree = 0;
  long r = 0;
  long energy = 0;
  long complex_dim = 0;
  long source_hol_degree = 0;
  long source_stratum_dim = 0;
  /// r ≤ k − 2 and, for full maps, 2r ≤ 3k − 6.
  bool realizable = false;

  friend bool operator==(const ComponentDescriptor&, const ComponentDescriptor&) = default;
};

inline ComponentDescriptor classify_component(long harmonic_degree, long r) {
  if (r < 0) throw PreconditionError("ramification index must be nonnegative");
  const long a = std::labs(harmonic_degree);
  ComponentDescriptor d;
  d.harmonic_degree = harmonic_degree;
  d.r = r;
  d.energy = 3 * a + 2 * r + 4;
  d.complex_dim = 3 * a + r + 8;
  d.source_hol_degree = a + r + 2;
  d.source_stratum_dim = 3 * d.source_hol_degree - 2 * r + 2;
  d.realizable = r <= d.source_hol_degree - 2 && 2 * r <= 3 * d.source_hol_degree - 6;
  return d;
}

/// Non-minimal harmonic map φ₁ built from a full holomorphic map, carried as
/// an exact bi-polynomial lift together with the integers it should have.
class HarmonicMapRep {
 public:
  const HoloMap& source() const { return source_; }
  const BiTriple<GaussianRational>& lift() const { return lift_; }
  const BiTriple<Complex>& float_lift() const { return float_lift_; }
  const RamificationData& ramification() const { return ram_; }

  std::size_t k() const { return source_.degree(); }
  std::size_t r() const { return ram_.index(); }

  long predicted_degree() const { return static_cast<long>(k()) - 2 - static_cast<long>(r()); }
  long predicted_energy() const { return 3 * static_cast<long>(k()) - 2 - static_cast<long>(r()); }
  /// ∂-energy: degree of the associated curve f₁.
  long predicted_e_prime() const { return 2 * static_cast<long>(k()) - 2 - static_cast<long>(r()); }
  /// ∂̄-energy: degree of f.
  long predicted_e_doubleprime() const { return static_cast<long>(k()); }

  ComponentDescriptor component() const { return classify_component(predicted_degree(), static_cast<long>(r())); }

  friend HarmonicMapRep gauss_transform(const HoloMap& f);

 private:
  HarmonicMapRep(HoloMap f, BiTriple<GaussianRational> lift, RamificationData ram)
      : source_(std::move(f)), lift_(std::move(lift)), ram_(std::move(ram)) {
    for (std::size_t i = 0; i < 3; ++i) float_lift_[i] = lift_[i].to_complex();
  }

  HoloMap source_;
  BiTriple<GaussianRational> lift_;
  BiTriple<Complex> float_lift_;
  RamificationData ram_;
};

inline HarmonicMapRep gauss_transform(const HoloMap& f) {
  RamificationData ram = ramification_data(f);  // throws NotFull
  BiTriple<GaussianRational> lift = gauss_lift(f.components());
  if (lift[0].is_zero() && lift[1].is_zero() && lift[2].is_zero())
    throw NotFull("Gauss lift vanishes identically");
  return HarmonicMapRep(f, std::move(lift), std::move(ram));
}

using Vector3c = std::array<Complex, 3>;

/// Unit vector with its largest-modulus entry made real and positive.
inline Vector3c normalize_phase(const Vector3c& v) {
  double n2 = 0;
  std::size_t big = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    n2 += std::norm(v[i]);
    if (std::abs(v[i]) > std::abs(v[big])) big = i;
  }
  const Complex scale = std::conj(v[big]) / (std::abs(v[big]) * std::sqrt(n2));
  return {v[0] * scale, v[1] * scale, v[2] * scale};
}

/// |V| relative to |p|²|p′| below this counts as a lift zero.
inline constexpr double kNearSingularRatio = 1e-8;

/// Normalized representative of φ₁(z).  Throws NearSingular at (or very near)
/// a ramification point, where the lift vanishes.
inline Vector3c evaluate(const HarmonicMapRep& phi, Complex z) {
  Vector3c v;
  double vn = 0, pn = 0, dn = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    v[i] = phi.float_lift()[i](z);
    vn += std::norm(v[i]);
    const CPoly pi = phi.source()[i].to_complex();
    pn += std::norm(pi(z));
    dn += std::norm(pi.derivative()(z));
  }
  const double scale = pn * std::sqrt(dn);
  if (!(std::sqrt(vn) > kNearSingularRatio * scale) || vn == 0.0)
    throw NearSingular("lift is numerically zero at z = (" + std::to_string(z.real()) + ", " +
                       std::to_string(z.imag()) + ")");
  return normalize_phase(v);
}

struct RegularizedValue {
  Vector3c value;
  /// 0 when no perturbation was needed.
  double perturbation_radius = 0.0;
};

/// Like evaluate, but near a lift zero evaluates at a perturbed point and
/// reports the perturbation radius used.
inline RegularizedValue evaluate_regularized(const HarmonicMapRep& phi, Complex z) {
  try {
    return {evaluate(phi, z), 0.0};
  } catch (const NearSingular&) {
  }
  for (double rho = 1e-7 * (1.0 + std::abs(z)); rho < 1e-2; rho *= 10) {
    try {
      return {evaluate(phi, z + Complex(rho, 0.0)), rho};
    } catch (const NearSingular&) {
    }
  }
  throw NearSingular("could not regularize evaluation");
}

}  // namespace harmap
