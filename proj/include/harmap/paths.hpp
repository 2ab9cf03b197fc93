#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "harmap/quadrature.hpp"
#include "harmap/strata.hpp"

namespace harmap {

// ---------------------------------------------------------------------------
// Stratum membership at floating-point coefficients.

/// Relative singular-value threshold separating "zero" from "nonzero".
inline constexpr double kNumericZero = 1e-8;
/// Absolute slack on step lengths so a constant path is not subdivided.
inline constexpr double kStepSlack = 1e-12;

struct NumericMembership {
  bool coprime = false;
  bool full = false;
  bool index_ok = false;
  /// s_{2d−r}/s_1 and s_{2d−r+1}/s_1 of the wedge Sylvester system, i.e. the
  /// largest of the r "zero" values and the smallest "nonzero" one.
  double zero_ratio = 0;
  double gap_ratio = 0;
  bool ok() const { return coprime && full && index_ok; }
};

/// Index-r test for a float triple of formal degree k: the Sylvester matrix
/// of two generic combinations of the wedge components (binary forms of
/// degree 2k−2) has exactly r singular values below 1e−8 of the largest.
inline NumericMembership numeric_membership(const CPolyTriple& p, std::size_t k, std::size_t r) {
  NumericMembership m;
  {
    auto cm = coefficient_matrix(p, k + 1);
    numeric::MatrixC e(3, static_cast<Eigen::Index>(k + 1));
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j <= k; ++j) e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = cm(i, j);
    const auto s = numeric::singular_values(e);
    m.full = s.size() == 3 && s[2] > kNumericZero * s[0];
  }
  {
    const auto [f, g] = numeric::generic_pair(p);
    const auto s = numeric::singular_values(numeric::sylvester(f, g, k));
    m.coprime = !s.empty() && s.back() > kNumericZero * s.front();
  }
  {
    const std::size_t d = 2 * k - 2;
    // The z^(2k−1) terms cancel exactly in exact arithmetic; drop the round-off.
    CPolyTriple h = wedge(p);
    for (auto& c : h) c = c.truncated(d);
    double scale = 0;
    for (const auto& c : h) scale = std::max(scale, numeric::coefficient_norm(c));
    if (scale == 0) return m;
    CPolyTriple hn{h[0] * Complex(1 / scale), h[1] * Complex(1 / scale), h[2] * Complex(1 / scale)};
    const auto [f, g] = numeric::generic_pair(hn);
    const auto s = numeric::singular_values(numeric::sylvester(f, g, d));
    const std::size_t n = s.size();
    if (r > n) return m;
    m.zero_ratio = r > 0 ? s[n - r] / s[0] : 0.0;
    m.gap_ratio = r < n ? s[n - r - 1] / s[0] : 0.0;
    m.index_ok = (r == 0 || m.zero_ratio < kNumericZero) && (r == n || m.gap_ratio >= kNumericZero);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Paths inside Hol_{k,r}.

struct PathStep {
  double t = 0;
  /// Interpolation parameter actually used; off the real axis after a repair.
  Complex parameter{};
  CPoly a;
  CPolyTriple p;
  NumericMembership membership;
  std::size_t repairs = 0;
};

struct StratumPath {
  StratumPoint from;
  StratumPoint to;
  std::vector<PathStep> steps;
  /// Total polyline length divided by the requested number of steps.
  double nominal_step = 0;
  std::size_t k() const { return from.k(); }
  std::size_t r() const { return from.r(); }
};

struct PathConfig {
  std::size_t max_repairs_per_step = 20;
  std::size_t max_subdivisions = 6;
  std::uint64_t seed = 0;
};

namespace detail {

inline std::vector<Complex> step_coordinates(const PathStep& s, std::size_t k, std::size_t r) {
  std::vector<Complex> v = s.a.padded(r + 1);
  for (const auto& q : s.p) {
    const auto c = q.padded(k + 1);
    v.insert(v.end(), c.begin(), c.end());
  }
  return v;
}

inline double step_distance(const PathStep& x, const PathStep& y, std::size_t k, std::size_t r) {
  const auto a = step_coordinates(x, k, r), b = step_coordinates(y, k, r);
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

/// Endpoint data in float form: the triple scaled to unit coefficient norm.
struct FloatEnd {
  CPoly a;
  CPolyTriple p;
};

inline FloatEnd float_end(const StratumPoint& pt) {
  FloatEnd e{pt.a.to_complex(), {pt.f[0].to_complex(), pt.f[1].to_complex(), pt.f[2].to_complex()}};
  double n = 0;
  for (const auto& q : e.p) n += std::pow(numeric::coefficient_norm(q), 2);
  for (auto& q : e.p) q = q * Complex(1 / std::sqrt(n));
  return e;
}

inline Complex inner(const CPolyTriple& x, const CPolyTriple& y, std::size_t k) {
  Complex s{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j <= k; ++j) s += x[i][j] * std::conj(y[i][j]);
  return s;
}

inline numeric::MatrixC float_l_matrix(const CPoly& a, const CPoly& p0, std::size_t k) {
  const std::size_t r = a.degree().value();
  numeric::MatrixC m = numeric::MatrixC::Zero(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k + 1));
  for (std::size_t j = 0; j <= k; ++j) {
    const CPoly img = l_image(a, p0, CPoly::monomial(1.0, j));
    for (std::size_t i = 0; i < r; ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = img[i];
  }
  return m;
}

/// Builds the path point at complex parameter s: a and p0 interpolated, p1
/// and p2 the least-squares projections of the interpolated endpoint
/// components onto ker L(a_s, p0_s).  Returns nullopt with a reason if the
/// kernel dimension drops.
inline std::optional<PathStep> path_point(const FloatEnd& x, const FloatEnd& y, Complex s, std::size_t k,
                                          std::size_t r, std::string& why) {
  const Complex u = 1.0 - s;
  PathStep st;
  st.parameter = s;
  st.a = x.a * u + y.a * s;
  st.p[0] = x.p[0] * u + y.p[0] * s;
  const auto l = float_l_matrix(st.a, st.p[0], k);
  if (r > 0) {
    const auto sv = numeric::singular_values(l);
    if (!(sv.back() > kNumericZero * sv.front())) {
      why = "kernel dimension drop";
      return std::nullopt;
    }
  }
  const auto kb = numeric::kernel_basis(l, static_cast<Eigen::Index>(k + 1 - r));
  for (std::size_t i = 1; i <= 2; ++i) {
    const CPoly target = x.p[i] * u + y.p[i] * s;
    numeric::VectorC v(static_cast<Eigen::Index>(k + 1));
    const auto c = target.padded(k + 1);
    for (std::size_t j = 0; j <= k; ++j) v(static_cast<Eigen::Index>(j)) = c[j];
    const numeric::VectorC proj = kb * (kb.adjoint() * v);
    st.p[i] = CPoly(std::vector<Complex>(proj.data(), proj.data() + proj.size()));
  }
  st.membership = numeric_membership(st.p, k, r);
  if (!st.membership.ok()) {
    why = !st.membership.coprime ? "components nearly share a zero"
          : !st.membership.full  ? "components nearly dependent"
                                 : "numeric ramification index differs from r";
    return std::nullopt;
  }
  return st;
}

}  // namespace detail

/// Path from p to q through Hol_{k,r} in the X′_r chart.  Degenerate steps
/// are repaired by moving the parameter off the real segment by a random
/// complex offset (at most half a step); after max_repairs_per_step failed
/// retries a PathFailure names the step.  Steps longer than twice the
/// nominal step are subdivided.
inline StratumPath connect(const StratumPoint& p, const StratumPoint& q, std::size_t n_steps,
                           const PathConfig& cfg = {}) {
  if (n_steps == 0) throw PreconditionError("a path needs at least one step");
  if (p.k() != q.k() || p.r() != q.r()) throw PreconditionError("endpoints lie in different strata");
  if (!gcd(p.a, p.f[0]).is_constant() || !gcd(q.a, q.f[0]).is_constant())
    throw PreconditionError("endpoints must have a coprime to p0");
  const std::size_t k = p.k(), r = p.r();

  const detail::FloatEnd x = detail::float_end(p);
  detail::FloatEnd y = detail::float_end(q);
  // Align the projective phase of q with p to shorten the path.
  const Complex ip = detail::inner(x.p, y.p, k);
  if (std::abs(ip) > 0)
    for (auto& c : y.p) c = c * (ip / std::abs(ip));

  Rng rng(cfg.seed ^ 0xA0761D6478BD642Full);
  auto make = [&](double t, std::size_t index_hint) {
    std::string why;
    const double radius = 0.5 / static_cast<double>(n_steps);
    for (std::size_t attempt = 0; attempt <= cfg.max_repairs_per_step; ++attempt) {
      Complex s(t, 0.0);
      if (attempt > 0 && t > 0 && t < 1) s += std::polar(radius * (0.2 + 0.8 * rng.uniform01()), 2 * std::numbers::pi * rng.uniform01());
      if (auto st = detail::path_point(x, y, s, k, r, why)) {
        st->t = t;
        st->repairs = attempt;
        return *st;
      }
    }
    throw PathFailure("step " + std::to_string(index_hint) + " (t = " + std::to_string(t) + "): " + why);
  };

  StratumPath path{p, q, {}, 0};
  for (std::size_t j = 0; j <= n_steps; ++j)
    path.steps.push_back(make(static_cast<double>(j) / static_cast<double>(n_steps), j));

  double length = 0;
  for (std::size_t j = 0; j + 1 < path.steps.size(); ++j)
    length += detail::step_distance(path.steps[j], path.steps[j + 1], k, r);
  path.nominal_step = length / static_cast<double>(n_steps);

  for (std::size_t round = 0; round < cfg.max_subdivisions; ++round) {
    bool changed = false;
    std::vector<PathStep> refined{path.steps.front()};
    for (std::size_t j = 0; j + 1 < path.steps.size(); ++j) {
      const auto& s0 = path.steps[j];
      const auto& s1 = path.steps[j + 1];
      if (detail::step_distance(s0, s1, k, r) > 2 * path.nominal_step + kStepSlack) {
        refined.push_back(make((s0.t + s1.t) / 2, j));
        changed = true;
      }
      refined.push_back(s1);
    }
    path.steps = std::move(refined);
    if (!changed) break;
  }
  return path;
}

struct StepVerdict {
  std::size_t index = 0;
  NumericMembership membership;
  bool continuity_ok = true;
  std::optional<IntegratedInvariants> invariants;
  bool invariants_ok = true;
  bool ok() const { return membership.ok() && continuity_ok && invariants_ok; }
};

struct PathReport {
  std::vector<StepVerdict> steps;
  std::vector<std::size_t> failed_steps;
  double max_step = 0;
  double nominal_step = 0;
  long expected_degree = 0, expected_energy = 0;
  bool ok() const { return failed_steps.empty(); }
};

/// Re-checks every step from its coefficients: numeric membership, step
/// length against twice the nominal step, and on every `quadrature_stride`-th
/// step (plus the last) that the harmonic invariants snap to
/// (k − 2 − r, 3k − 2 − r).  A stride of 0 skips quadrature.
inline PathReport verify_path(const StratumPath& path, std::size_t quadrature_stride = 10,
                              const QuadratureConfig& qcfg = {}) {
  const std::size_t k = path.k(), r = path.r();
  PathReport rep;
  rep.nominal_step = path.nominal_step;
  rep.expected_degree = static_cast<long>(k) - 2 - static_cast<long>(r);
  rep.expected_energy = 3 * static_cast<long>(k) - 2 - static_cast<long>(r);
  const std::size_t n = path.steps.size();
  rep.steps.resize(n);
  parallel_for(n, [&](std::size_t j) {
    const auto& st = path.steps[j];
    StepVerdict& v = rep.steps[j];
    v.index = j;
    v.membership = numeric_membership(st.p, k, r);
    if (j + 1 < n)
      v.continuity_ok = detail::step_distance(st, path.steps[j + 1], k, r) <= 2 * path.nominal_step + kStepSlack;
    if (quadrature_stride > 0 && (j % quadrature_stride == 0 || j + 1 == n)) {
      try {
        const auto lift = gauss_lift(st.p);
        const auto sing = r > 0 ? numeric::roots(st.a) : std::vector<Complex>{};
        v.invariants = integrate_invariants(lift, qcfg, sing);
        v.invariants_ok = snap(v.invariants->degree) == rep.expected_degree &&
                          snap(v.invariants->energy) == rep.expected_energy &&
                          std::abs(v.invariants->degree - static_cast<double>(rep.expected_degree)) <= kSnapTolerance &&
                          std::abs(v.invariants->energy - static_cast<double>(rep.expected_energy)) <= kSnapTolerance;
      } catch (const Error&) {
        v.invariants_ok = false;
      }
    }
  });
  for (std::size_t j = 0; j + 1 < n; ++j)
    rep.max_step = std::max(rep.max_step, detail::step_distance(path.steps[j], path.steps[j + 1], k, r));
  for (const auto& v : rep.steps)
    if (!v.ok()) rep.failed_steps.push_back(v.index);
  return rep;
}

}  // namespace harmap
