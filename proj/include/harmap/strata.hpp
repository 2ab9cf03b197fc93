#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "harmap/gauss_transform.hpp"
#include "harmap/random.hpp"

namespace harmap {

// ---------------------------------------------------------------------------
// The linear map L(a, p): V_k → V_{r−1}, u ↦ (p u′ − p′ u) mod a.

struct LMatrix {
  Matrix<GaussianRational> entries;  // r × (k + 1)
  Poly a;
  Poly p;
  std::size_t k = 0;
};

template <Scalar T>
Polynomial<T> l_image(const Polynomial<T>& a, const Polynomial<T>& p, const Polynomial<T>& u) {
  return (p * u.derivative() - p.derivative() * u) % a;
}

/// Columns are the images of the monomials z^j, j = 0..k, in the basis
/// 1, z, ..., z^(r−1).  Requires a monic and coprime to p.
inline LMatrix build_L(const Poly& a, const Poly& p, std::size_t k) {
  if (a.is_zero() || !(a.leading() == GaussianRational(1))) throw PreconditionError("a must be monic");
  if (p.degree().value_or(-1) > static_cast<long>(k)) throw PreconditionError("p exceeds the degree bound k");
  if (p.is_zero() || !gcd(a, p).is_constant()) throw NotCoprime("a and p share a root");
  const std::size_t r = a.degree().value();
  LMatrix m{Matrix<GaussianRational>(r, k + 1), a, p, k};
  for (std::size_t j = 0; j <= k; ++j) {
    const Poly img = l_image(a, p, Poly::monomial(1, j));
    for (std::size_t i = 0; i < img.size(); ++i) m.entries(i, j) = img.coeffs()[i];
  }
  return m;
}

/// Exact kernel of L as polynomials in V_k.
inline std::vector<Poly> kernel_exact(const Matrix<GaussianRational>& m) {
  std::vector<Poly> out;
  for (auto& v : exact_kernel(m)) out.emplace_back(std::move(v));
  return out;
}

inline std::vector<Poly> kernel_exact(const LMatrix& m) { return kernel_exact(m.entries); }

// ---------------------------------------------------------------------------
// Stratification of ℙV_k³ by common-factor degree, and the embedding ξ.

struct TripleStratum {
  Poly b;         // monic gcd of the components
  PolyTriple q;   // components divided by b
  std::size_t r;  // k − max deg q
};

/// S_r membership of [p0, p1, p2] ∈ ℙV_k³.  S_0 is read as "triple gcd
/// constant and max degree exactly k", which is Hol_k.
inline TripleStratum stratify(const PolyTriple& p, std::size_t k) {
  const Poly b = gcd<GaussianRational>(std::span<const Poly>(p));
  PolyTriple q{exact_quotient(p[0], b), exact_quotient(p[1], b), exact_quotient(p[2], b)};
  const std::size_t dq = max_degree(q).value();
  if (dq > k) throw PreconditionError("triple exceeds the ambient degree k");
  return {b, std::move(q), k - dq};
}

/// ξ([b], [q]) = [b q] for b ∈ ℙV_r and [q] ∈ Hol_{k−r}.
inline PolyTriple xi_embed(const Poly& b, const HoloMap& q) { return {b * q[0], b * q[1], b * q[2]}; }

// ---------------------------------------------------------------------------
// Stratum points and the seeded sampler.

/// A point of X′_r: a monic divisor polynomial a of degree r coprime to p0,
/// and a map f whose ramification divisor is exactly ⟨roots of a⟩.
struct StratumPoint {
  Poly a;
  HoloMap f;
  std::vector<Poly> kernel_basis;  // ker L(a, p0)
  std::size_t k() const { return f.degree(); }
  std::size_t r() const { return a.degree().value(); }
};

/// Reason a candidate (a, p) fails to be a point of Hol_{k,r} with divisor
/// exactly a, or nullopt when it is one.
inline std::optional<std::string> stratum_rejection(const Poly& a, const PolyTriple& p, std::size_t k) {
  const std::size_t r = a.degree().value();
  if (max_degree(p) != Degree(k)) return "degree is not k";
  std::optional<HoloMap> f;
  try {
    f = HoloMap::validate(p);
  } catch (const NotAMap&) {
    return "components share a common zero";
  }
  if (!is_full(*f)) return "map is not full";
  const auto ram = ramification_data(*f);
  if (ram.index() != r) return "ramification index is " + std::to_string(ram.index());
  if (!(ram.divisor == Divisor(a, 0))) return "ramification divisor differs from a";
  return std::nullopt;
}

struct SamplerLimits {
  long coefficient_height = 10;
  long root_height = 3;
  long combination_height = 5;
  std::size_t max_attempts = 1000;
};

inline void check_stratum_bounds(std::size_t k, std::size_t r) {
  if (k < 2) throw PreconditionError("full maps need degree k >= 2");
  if (r + 2 > k) throw PreconditionError("stratum needs r <= k - 2");
  if (2 * r + 6 > 3 * k) throw PreconditionError("full maps satisfy 2r <= 3k - 6");
}

/// Draws a point of Hol_{k,r} through the X′_r chart: a with small Gaussian
/// integer roots, p0 coprime to a, p1 and p2 random combinations of the
/// exact kernel of L(a, p0).  Deterministic in (k, r, seed).
inline StratumPoint sample_stratum(std::size_t k, std::size_t r, std::uint64_t seed, const SamplerLimits& lim = {}) {
  check_stratum_bounds(k, r);
  Rng rng(seed * 0x9E3779B97F4A7C15ull + k * 1000003ull + r);
  std::string last = "no attempt made";
  for (std::size_t attempt = 0; attempt < lim.max_attempts; ++attempt) {
    std::vector<GaussianRational> roots;
    for (std::size_t i = 0; i < r; ++i) roots.push_back(rng.gaussian_integer(lim.root_height));
    const Poly a = Poly::from_roots(roots);
    const Poly p0 = rng.polynomial(k, lim.coefficient_height);
    if (!gcd(a, p0).is_constant()) {
      last = "p0 shares a root with a";
      continue;
    }
    std::vector<Poly> basis = kernel_exact(build_L(a, p0, k));
    auto combo = [&] {
      Poly s;
      for (const Poly& u : basis) s = s + u * rng.gaussian_integer(lim.combination_height);
      return s;
    };
    PolyTriple p{p0, combo(), combo()};
    if (auto why = stratum_rejection(a, p, k)) {
      last = *why;
      continue;
    }
    return {a, HoloMap::validate(std::move(p)), std::move(basis)};
  }
  throw SamplingFailure("no sample after " + std::to_string(lim.max_attempts) + " attempts; last rejection: " + last);
}

// ---------------------------------------------------------------------------
// Numerical codimension of the divisibility conditions.

struct CodimensionResult {
  std::size_t rank = 0;
  std::size_t codimension = 0;
  /// dim Hol_k − rank = 3k + 2 − rank.
  std::size_t stratum_dimension = 0;
  double gap = 0;
  std::vector<double> singular_values;
  bool matches_expected = false;  // rank == 2r
};

/// Jacobian of (p0p1′−p0′p1) mod a and (p0p2′−p0′p2) mod a with respect to
/// the 3(k+1) coefficients, evaluated in floating point at the triple.
inline numeric::MatrixC divisibility_jacobian(const CPoly& a, const CPolyTriple& p, std::size_t k) {
  const std::size_t r = a.degree().value();
  const auto n = static_cast<Eigen::Index>(k + 1);
  numeric::MatrixC j = numeric::MatrixC::Zero(static_cast<Eigen::Index>(2 * r), 3 * n);
  for (std::size_t m = 0; m <= k; ++m) {
    const CPoly zm = CPoly::monomial(1.0, m);
    for (std::size_t c = 1; c <= 2; ++c) {
      const std::size_t row0 = (c - 1) * r;
      // d/d(coeff of p_c): [p0 (z^m)′ − p0′ z^m]_a
      const CPoly dpc = l_image(a, p[0], zm);
      // d/d(coeff of p0): [z^m p_c′ − (z^m)′ p_c]_a
      const CPoly dp0 = l_image(a, p[c], zm) * Complex(-1.0);
      for (std::size_t i = 0; i < r; ++i) {
        j(static_cast<Eigen::Index>(row0 + i), static_cast<Eigen::Index>(c) * n + static_cast<Eigen::Index>(m)) = dpc[i];
        j(static_cast<Eigen::Index>(row0 + i), static_cast<Eigen::Index>(m)) = dp0[i];
      }
    }
  }
  for (Eigen::Index row = 0; row < j.rows(); ++row) {
    const double nr = j.row(row).norm();
    if (nr > 0) j.row(row) /= nr;
  }
  return j;
}

/// Rank of the divisibility Jacobian at a stratum point; throws
/// IndeterminateRank when the singular values have no gap above 1e6.
inline CodimensionResult codimension_check(const StratumPoint& pt) {
  const std::size_t k = pt.k(), r = pt.r();
  CPolyTriple p;
  double scale = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    p[i] = pt.f[i].to_complex();
    scale = std::max(scale, numeric::coefficient_norm(p[i]));
  }
  for (auto& q : p) q = q * Complex(1.0 / scale);
  CodimensionResult out;
  if (r > 0) {
    const auto jac = divisibility_jacobian(pt.a.to_complex(), p, k);
    out.singular_values = numeric::singular_values(jac);
    const auto g = numeric::gap_rank(out.singular_values, static_cast<std::size_t>(jac.cols()));
    out.rank = g.rank;
    out.gap = g.gap;
  } else {
    out.gap = std::numeric_limits<double>::infinity();
  }
  out.codimension = out.rank;
  out.stratum_dimension = 3 * k + 2 - out.rank;
  out.matches_expected = out.rank == 2 * r;
  return out;
}

// ---------------------------------------------------------------------------
// Degeneration families f_t = f_0 + t g.

enum class DegenerationKind { Ramifying, CommonRoot, Constant };

struct DegenerationEntry {
  mpq_class t;
  /// Exact ramification index, when f_t is a full map of degree k.
  std::optional<std::size_t> index;
  /// "ok", "common zero (degree drop)", "not full" or "degree drop".
  std::string status;
};

struct DegenerationReport {
  DegenerationKind kind = DegenerationKind::Ramifying;
  std::size_t k = 0;
  std::vector<DegenerationEntry> entries;  // entries[0] is the limit t = 0
  std::optional<std::size_t> generic_index;
  /// Index at t = 0 is at least the generic index, or the limit leaves Hol_k.
  bool semicontinuous = false;
  bool limit_degree_drop = false;
};

inline DegenerationEntry degeneration_entry(const PolyTriple& p, std::size_t k, mpq_class t) {
  DegenerationEntry e{std::move(t), std::nullopt, "ok"};
  if (max_degree(p) != Degree(k)) {
    e.status = "degree drop";
    return e;
  }
  try {
    const HoloMap f = HoloMap::validate(p);
    if (!is_full(f)) {
      e.status = "not full";
      return e;
    }
    e.index = ramification_data(f).index();
  } catch (const NotAMap&) {
    e.status = "common zero (degree drop)";
  }
  return e;
}

/// One-parameter family through a degenerate limit, with the exact index
/// recorded at t = 0 and at t = 1, 1/2, 1/3, 1/5, 1/8, 1/13.
inline DegenerationReport degeneration_family(std::size_t k, std::uint64_t seed,
                                              DegenerationKind kind = DegenerationKind::Ramifying) {
  if (k < 3) throw PreconditionError("degeneration families need k >= 3");
  Rng rng(seed ^ 0xD1B54A32D192ED03ull);
  PolyTriple base;
  switch (kind) {
    case DegenerationKind::Ramifying:
    case DegenerationKind::Constant:
      base = sample_stratum(k, 1, seed).f.components();
      break;
    case DegenerationKind::CommonRoot: {
      const Poly lin{-rng.gaussian_integer(3), GaussianRational(1)};
      const PolyTriple q = sample_stratum(k - 1, 0, seed).f.components();
      base = {lin * q[0], lin * q[1], lin * q[2]};
      break;
    }
  }
  PolyTriple dir;
  if (kind != DegenerationKind::Constant)
    for (auto& d : dir) d = rng.polynomial(k, 10);

  DegenerationReport rep;
  rep.kind = kind;
  rep.k = k;
  const long dens[] = {0, 1, 2, 3, 5, 8, 13};
  for (long den : dens) {
    const mpq_class t = den == 0 ? mpq_class(0) : mpq_class(1, den);
    const GaussianRational tg{t};
    PolyTriple pt{base[0] + dir[0] * tg, base[1] + dir[1] * tg, base[2] + dir[2] * tg};
    rep.entries.push_back(degeneration_entry(pt, k, t));
  }
  for (std::size_t i = 1; i < rep.entries.size(); ++i)
    if (rep.entries[i].index)
      rep.generic_index = std::min(rep.generic_index.value_or(*rep.entries[i].index), *rep.entries[i].index);
  const auto& lim = rep.entries.front();
  rep.limit_degree_drop = !lim.index.has_value();
  rep.semicontinuous = rep.limit_degree_drop || !rep.generic_index || *lim.index >= *rep.generic_index;
  return rep;
}

// ---------------------------------------------------------------------------
// Divisors as unordered point configurations in S².

struct DivisorPoint {
  bool at_infinity = false;
  std::optional<GaussianRational> exact;
  Complex approx{};
};

namespace detail {

/// Small-denominator rational within tol of x, if one exists.
inline std::optional<mpq_class> recognize_rational(double x, double tol = 1e-6, long max_den = 1000) {
  double frac = x;
  long h0 = 1, h1 = 0, k0 = 0, k1 = 1;  // convergents h/k
  for (int it = 0; it < 40; ++it) {
    const double fl = std::floor(frac);
    const long a = static_cast<long>(fl);
    const long h = a * h0 + h1, kk = a * k0 + k1;
    if (kk > max_den) break;
    h1 = h0;
    h0 = h;
    k1 = k0;
    k0 = kk;
    if (std::abs(x - static_cast<double>(h) / static_cast<double>(kk)) <= tol) {
      mpq_class q(h, kk);
      q.canonicalize();
      return q;
    }
    if (frac - fl < 1e-15) break;
    frac = 1.0 / (frac - fl);
  }
  return std::nullopt;
}

}  // namespace detail

/// Points of the divisor: finite roots (exact when they are small-denominator
/// Gaussian rationals, verified by exact evaluation) and ∞ copies.
inline std::vector<DivisorPoint> divisor_points(const Divisor& d) {
  std::vector<DivisorPoint> out;
  Poly rest = d.finite_part();
  for (const Complex& x : d.roots_approx()) {
    DivisorPoint pt{false, std::nullopt, x};
    const double tol = 1e-6 * (1 + std::abs(x));
    auto re = detail::recognize_rational(x.real(), tol);
    auto im = detail::recognize_rational(x.imag(), tol);
    if (re && im) {
      const GaussianRational cand{*re, *im};
      if (!rest.is_zero() && rest(cand).is_zero()) {
        rest = exact_quotient(rest, Poly{-cand, GaussianRational(1)});
        pt.exact = cand;
        pt.approx = cand.to_complex();
      }
    }
    out.push_back(pt);
  }
  for (std::size_t i = 0; i < d.infinity_multiplicity(); ++i) out.push_back({true, std::nullopt, {}});
  return out;
}

/// Inverse of divisor_points: exact product of (z − x_i) when every finite
/// point is exact, otherwise the float product with exactly converted
/// coefficients.
inline Divisor divisor_from_points(const std::vector<DivisorPoint>& pts) {
  std::size_t inf = 0;
  bool all_exact = true;
  std::vector<GaussianRational> exact;
  std::vector<Complex> approx;
  for (const auto& pt : pts) {
    if (pt.at_infinity) {
      ++inf;
      continue;
    }
    approx.push_back(pt.approx);
    if (pt.exact)
      exact.push_back(*pt.exact);
    else
      all_exact = false;
  }
  if (all_exact) return Divisor(Poly::from_roots(exact), inf);
  const CPoly fp = CPoly::from_roots(approx);
  std::vector<GaussianRational> c;
  for (const Complex& x : fp.coeffs()) c.push_back(GaussianRational::from_complex(x));
  return Divisor(Poly(std::move(c)), inf);
}

inline Divisor divisor_roundtrip(const Divisor& d) { return divisor_from_points(divisor_points(d)); }

// ---------------------------------------------------------------------------

/// Rows (k′, r) for k′ = 0..max_k then −1..−max_k, r = 0..max_r.
inline std::vector<ComponentDescriptor> component_table(long max_k, long max_r) {
  if (max_k < 0 || max_r < 0) throw PreconditionError("table bounds must be nonnegative");
  std::vector<ComponentDescriptor> rows;
  for (long k = 0; k <= max_k; ++k)
    for (long r = 0; r <= max_r; ++r) rows.push_back(classify_component(k, r));
  for (long k = 1; k <= max_k; ++k)
    for (long r = 0; r <= max_r; ++r) rows.push_back(classify_component(-k, r));
  return rows;
}

}  // namespace harmap
