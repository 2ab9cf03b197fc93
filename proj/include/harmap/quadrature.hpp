#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "harmap/gauss_transform.hpp"
#include "harmap/parallel.hpp"

namespace harmap {

struct QuadratureConfig {
  /// Radial Gauss–Legendre nodes per chart at the coarsest level; the angular
  /// trapezoid rule uses twice as many.
  std::size_t resolution = 32;
  /// Each stereographic chart integrates the disk |z| ≤ overlap_radius; the
  /// partition of unity switches charts across 1/overlap_radius ≤ |z| ≤ overlap_radius.
  double overlap_radius = 2.0;
  /// Number of resolution doublings allowed after the coarsest level.
  std::size_t refinement_levels = 4;
  /// Nodes closer than this to a known lift zero are moved onto this circle.
  double exclusion_radius = 1e-6;
  /// Refinement stops once the Richardson estimate drops below this.
  double tolerance = 1e-9;

  void validate() const {
    if (resolution < 16) throw PreconditionError("quadrature resolution must be at least 16");
    if (!(exclusion_radius > 0)) throw PreconditionError("exclusion radius must be positive");
    if (!(overlap_radius > 1)) throw PreconditionError("overlap radius must exceed 1");
  }
};

struct IntegratedInvariants {
  double e_prime = 0;
  double e_doubleprime = 0;
  double degree = 0;  // e_prime - e_doubleprime
  double energy = 0;  // e_prime + e_doubleprime
  /// |difference| between the last two refinement levels (max over E′, E″).
  double error_estimate = 0;
  std::size_t resolution_used = 0;
  std::size_t nodes = 0;
  std::size_t excluded_nodes = 0;
};

namespace detail {

/// Dense float copy of a bi-polynomial vector with its formal partials.
class LiftField {
 public:
  explicit LiftField(const BiTriple<Complex>& v) {
    for (const auto& c : v) {
      auto [a, b] = c.bidegree();
      zdeg_ = std::max(zdeg_, a);
      zbdeg_ = std::max(zbdeg_, b);
    }
    stride_ = zbdeg_ + 1;
    for (std::size_t k = 0; k < 3; ++k) {
      coeffs_[k].assign((zdeg_ + 1) * stride_, Complex{});
      for (const auto& [e, c] : v[k].terms()) coeffs_[k][e.first * stride_ + e.second] = c;
    }
  }

  /// Lift in the chart w = 1/z: Σ c_ij w^(A−i) w̄^(B−j).  Projectively the
  /// same map, polynomial in w.
  LiftField inverted() const {
    LiftField out = *this;
    for (std::size_t k = 0; k < 3; ++k)
      for (std::size_t i = 0; i <= zdeg_; ++i)
        for (std::size_t j = 0; j <= zbdeg_; ++j)
          out.coeffs_[k][(zdeg_ - i) * stride_ + (zbdeg_ - j)] = coeffs_[k][i * stride_ + j];
    return out;
  }

  struct Sample {
    std::array<Complex, 3> v, dz, dzb;
  };

  Sample operator()(Complex z) const {
    thread_local std::vector<Complex> zp, wp;
    zp.resize(zdeg_ + 1);
    wp.resize(zbdeg_ + 1);
    const Complex w = std::conj(z);
    zp[0] = wp[0] = 1.0;
    for (std::size_t n = 1; n <= zdeg_; ++n) zp[n] = zp[n - 1] * z;
    for (std::size_t n = 1; n <= zbdeg_; ++n) wp[n] = wp[n - 1] * w;
    Sample s{};
    for (std::size_t k = 0; k < 3; ++k) {
      const auto& c = coeffs_[k];
      for (std::size_t i = 0; i <= zdeg_; ++i)
        for (std::size_t j = 0; j <= zbdeg_; ++j) {
          const Complex a = c[i * stride_ + j];
          if (a == Complex{}) continue;
          s.v[k] += a * zp[i] * wp[j];
          if (i > 0) s.dz[k] += a * static_cast<double>(i) * zp[i - 1] * wp[j];
          if (j > 0) s.dzb[k] += a * static_cast<double>(j) * zp[i] * wp[j - 1];
        }
    }
    return s;
  }

 private:
  std::size_t zdeg_ = 0, zbdeg_ = 0, stride_ = 1;
  std::array<std::vector<Complex>, 3> coeffs_;
};

/// |D ∧ U|² for U = V/|V|, D = ∂V/|V|: the pulled-back Fubini–Study density
/// (|V|²|∂V|² − |⟨∂V,V⟩|²)/|V|⁴ without the cancellation.
inline double wedge_density(const std::array<Complex, 3>& v, const std::array<Complex, 3>& d) {
  const double n = std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
  if (!(n > 0)) return std::numeric_limits<double>::quiet_NaN();
  std::array<Complex, 3> u, e;
  for (std::size_t k = 0; k < 3; ++k) {
    u[k] = v[k] / n;
    e[k] = d[k] / n;
  }
  return std::norm(e[0] * u[1] - e[1] * u[0]) + std::norm(e[0] * u[2] - e[2] * u[0]) +
         std::norm(e[1] * u[2] - e[2] * u[1]);
}

/// C^∞ step: 0 for t ≤ −1, 1 for t ≥ 1.
inline double smooth_step(double t) {
  auto psi = [](double x) { return x > 0 ? std::exp(-1.0 / x) : 0.0; };
  const double a = psi((t + 1) / 2), b = psi((1 - t) / 2);
  return a / (a + b);
}

/// Weight of a chart at chart radius rho; the other chart gets 1 − weight at
/// radius 1/rho, which is the same function of its own radius.
inline double chart_weight(double rho, double overlap) {
  if (rho <= 0) return 1.0;
  return 1.0 - smooth_step(std::log(rho) / std::log(overlap));
}

struct GaussRule {
  std::vector<double> nodes, weights;  // on [−1, 1]
};

inline GaussRule gauss_legendre(std::size_t n) {
  GaussRule g{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    g.nodes[i] = -x;
    g.nodes[n - 1 - i] = x;
    g.weights[i] = g.weights[n - 1 - i] = 2.0 / ((1 - x * x) * dp * dp);
  }
  return g;
}

struct ChartSums {
  double e_prime = 0, e_doubleprime = 0;
  std::size_t nodes = 0, excluded = 0;
};

inline ChartSums integrate_chart(const LiftField& field, std::span<const Complex> singular,
                                 const QuadratureConfig& cfg, std::size_t nr) {
  const GaussRule rule = gauss_legendre(nr);
  const std::size_t nt = 2 * nr;
  const double s = cfg.overlap_radius;
  const double dtheta = 2 * std::numbers::pi / static_cast<double>(nt);
  std::vector<double> ep(nr * nt), edp(nr * nt);
  std::vector<char> moved(nr * nt, 0);

  parallel_for(nr, [&](std::size_t a) {
    const double rho = s * (rule.nodes[a] + 1) / 2;
    const double w_r = rule.weights[a] * s / 2 * rho * dtheta * chart_weight(rho, s);
    for (std::size_t m = 0; m < nt; ++m) {
      const std::size_t idx = a * nt + m;
      if (w_r == 0.0) {
        ep[idx] = edp[idx] = 0;
        continue;
      }
      const double theta = dtheta * (static_cast<double>(m) + 0.5);
      Complex z = std::polar(rho, theta);
      for (const Complex& x : singular) {
        const double d = std::abs(z - x);
        if (d < cfg.exclusion_radius) {
          z = x + (d > 0 ? (z - x) / d : Complex(1, 0)) * cfg.exclusion_radius;
          moved[idx] = 1;
        }
      }
      auto smp = field(z);
      double e1 = wedge_density(smp.v, smp.dz), e2 = wedge_density(smp.v, smp.dzb);
      if (!std::isfinite(e1) || !std::isfinite(e2)) {
        // Unlisted lift zero: step off it radially by the exclusion radius.
        z += std::polar(cfg.exclusion_radius, theta);
        smp = field(z);
        e1 = wedge_density(smp.v, smp.dz);
        e2 = wedge_density(smp.v, smp.dzb);
        moved[idx] = 1;
      }
      ep[idx] = e1 * w_r;
      edp[idx] = e2 * w_r;
    }
  });
  ChartSums out;
  out.e_prime = pairwise_sum(ep) / std::numbers::pi;
  out.e_doubleprime = pairwise_sum(edp) / std::numbers::pi;
  out.nodes = nr * nt;
  out.excluded = static_cast<std::size_t>(std::count(moved.begin(), moved.end(), 1));
  return out;
}

}  // namespace detail

/// E′ = (1/π)∬ |∂V ∧ V|²/|V|⁴ and E″ likewise with ∂_z̄, over the sphere as
/// two stereographic charts glued by a smooth partition of unity.  Refines
/// by doubling the grid until two successive levels agree to cfg.tolerance.
/// `singular` lists finite points where the lift vanishes (ramification
/// points); a lift zero at ∞ sits at the centre of the second chart.
inline IntegratedInvariants integrate_invariants(const BiTriple<Complex>& lift, const QuadratureConfig& cfg,
                                                 std::span<const Complex> singular = {}) {
  cfg.validate();
  if (lift[0].is_zero() && lift[1].is_zero() && lift[2].is_zero())
    throw PreconditionError("lift is identically zero");
  const detail::LiftField near(lift);
  const detail::LiftField far = near.inverted();
  std::vector<Complex> far_singular;
  for (const Complex& x : singular)
    if (std::abs(x) > 0) far_singular.push_back(1.0 / x);

  IntegratedInvariants prev, cur;
  std::size_t nr = cfg.resolution;
  for (std::size_t level = 0; level <= cfg.refinement_levels; ++level, nr *= 2) {
    const auto a = detail::integrate_chart(near, singular, cfg, nr);
    const auto b = detail::integrate_chart(far, far_singular, cfg, nr);
    cur.e_prime = a.e_prime + b.e_prime;
    cur.e_doubleprime = a.e_doubleprime + b.e_doubleprime;
    cur.degree = cur.e_prime - cur.e_doubleprime;
    cur.energy = cur.e_prime + cur.e_doubleprime;
    cur.resolution_used = nr;
    cur.nodes = a.nodes + b.nodes;
    cur.excluded_nodes = a.excluded + b.excluded;
    if (level > 0) {
      cur.error_estimate =
          std::max(std::abs(cur.e_prime - prev.e_prime), std::abs(cur.e_doubleprime - prev.e_doubleprime));
      if (cur.error_estimate < cfg.tolerance) break;
    } else {
      cur.error_estimate = std::numeric_limits<double>::infinity();
    }
    prev = cur;
  }
  if (!(cur.error_estimate < 0.5))
    throw IntegrationFailure("refinement did not converge: estimate " + std::to_string(cur.error_estimate) +
                             " at resolution " + std::to_string(cur.resolution_used));
  return cur;
}

inline IntegratedInvariants integrate_invariants(const CPolyTriple& p, const QuadratureConfig& cfg,
                                                 std::span<const Complex> singular = {}) {
  return integrate_invariants(BiTriple<Complex>{CBiPoly::holomorphic(p[0]), CBiPoly::holomorphic(p[1]),
                                                CBiPoly::holomorphic(p[2])},
                              cfg, singular);
}

inline IntegratedInvariants integrate_invariants(const HarmonicMapRep& phi, const QuadratureConfig& cfg) {
  const auto pts = phi.ramification().divisor.roots_approx();
  return integrate_invariants(phi.float_lift(), cfg, pts);
}

inline IntegratedInvariants integrate_invariants(const HoloMap& f, const QuadratureConfig& cfg) {
  return integrate_invariants(
      CPolyTriple{f[0].to_complex(), f[1].to_complex(), f[2].to_complex()}, cfg);
}

// ---------------------------------------------------------------------------
// Harmonicity residual

struct ResidualSample {
  double h = 0;
  double residual = 0;
};

struct TensionStudy {
  std::vector<ResidualSample> samples;
  /// log2(residual(h) / residual(h/2)) for each consecutive pair.
  std::vector<double> orders;
  std::size_t excluded_points = 0;
  std::size_t evaluation_points = 0;

  double final_order() const { return orders.empty() ? 0.0 : orders.back(); }
};

namespace detail {

using Projector = Eigen::Matrix3cd;

inline Projector projector(const BiTriple<Complex>& lift, Complex z) {
  Eigen::Vector3cd v(lift[0](z), lift[1](z), lift[2](z));
  return v * v.adjoint() / v.squaredNorm();
}

/// Fixed evaluation points: a 10 × 10 grid over [−0.95, 0.95]², offset so it
/// avoids the symmetric points where ramification tends to sit.
inline std::vector<Complex> residual_points() {
  std::vector<Complex> pts;
  for (int a = 0; a < 10; ++a)
    for (int b = 0; b < 10; ++b) pts.emplace_back(-0.937 + 0.2 * a, -0.923 + 0.2 * b);
  return pts;
}

/// Points within this distance of a singular point are skipped.
inline constexpr double kResidualExclusion = 0.2;

}  // namespace detail

/// max over the fixed evaluation points of ‖[Δ_h P, P]‖_F, with P = VV*/|V|²
/// and Δ_h the 5-point Laplacian of step h.  Zero for harmonic maps up to
/// O(h²) truncation error.
inline double tension_residual(const BiTriple<Complex>& lift, double h, std::span<const Complex> singular = {},
                               std::size_t* excluded = nullptr) {
  if (!(h > 0)) throw PreconditionError("grid spacing must be positive");
  const auto pts = detail::residual_points();
  std::vector<double> res(pts.size(), -1.0);
  parallel_for(pts.size(), [&](std::size_t n) {
    const Complex z = pts[n];
    for (const Complex& x : singular)
      if (std::abs(z - x) < detail::kResidualExclusion + 2 * h) return;
    const auto p = detail::projector(lift, z);
    const auto lap = (detail::projector(lift, z + h) + detail::projector(lift, z - h) +
                      detail::projector(lift, z + Complex(0, h)) + detail::projector(lift, z - Complex(0, h)) -
                      4.0 * p) /
                     (h * h);
    const detail::Projector comm = lap * p - p * lap;
    res[n] = comm.norm();
  });
  if (excluded) *excluded = static_cast<std::size_t>(std::count(res.begin(), res.end(), -1.0));
  const double mx = *std::max_element(res.begin(), res.end());
  if (mx < 0) throw PreconditionError("every residual evaluation point is excluded");
  return mx;
}

inline double tension_residual(const HarmonicMapRep& phi, double h) {
  const auto pts = phi.ramification().divisor.roots_approx();
  return tension_residual(phi.float_lift(), h, pts);
}

/// Residuals at h0, h0/2, ..., with the observed convergence orders.
inline TensionStudy tension_study(const BiTriple<Complex>& lift, std::span<const Complex> singular = {},
                                  double h0 = 0.04, std::size_t levels = 4) {
  TensionStudy st;
  st.evaluation_points = detail::residual_points().size();
  double h = h0;
  for (std::size_t l = 0; l < levels; ++l, h /= 2) {
    std::size_t ex = 0;
    st.samples.push_back({h, tension_residual(lift, h, singular, &ex)});
    st.excluded_points = ex;
  }
  for (std::size_t l = 0; l + 1 < st.samples.size(); ++l)
    st.orders.push_back(std::log2(st.samples[l].residual / st.samples[l + 1].residual));
  return st;
}

inline TensionStudy tension_study(const HarmonicMapRep& phi, double h0 = 0.04, std::size_t levels = 4) {
  const auto pts = phi.ramification().divisor.roots_approx();
  return tension_study(phi.float_lift(), pts, h0, levels);
}

// ---------------------------------------------------------------------------
// Verification report

struct VerificationReport {
  IntegratedInvariants integrals;
  TensionStudy tension;
  long predicted_degree = 0, predicted_energy = 0;
  long predicted_e_prime = 0, predicted_e_doubleprime = 0;
  long snapped_degree = 0, snapped_energy = 0;
  long snapped_e_prime = 0, snapped_e_doubleprime = 0;
  bool pass_degree = false, pass_energy = false;
  bool pass_e_prime = false, pass_e_doubleprime = false;
  bool pass_tension = false;
  QuadratureConfig config;

  bool passed() const { return pass_degree && pass_energy && pass_e_prime && pass_e_doubleprime && pass_tension; }
};

/// Raw values must lie this close to the predicted integers.
inline constexpr double kSnapTolerance = 1e-2;
/// Accepted convergence orders for the harmonicity residual.
inline constexpr double kMinTensionOrder = 1.7, kMaxTensionOrder = 2.3;

inline long snap(double x) { return std::lround(x); }

namespace detail {

inline void fill_snaps(VerificationReport& rep) {
  const auto& in = rep.integrals;
  rep.snapped_degree = snap(in.degree);
  rep.snapped_energy = snap(in.energy);
  rep.snapped_e_prime = snap(in.e_prime);
  rep.snapped_e_doubleprime = snap(in.e_doubleprime);
  auto ok = [](double raw, long snapped, long want) {
    return snapped == want && std::abs(raw - static_cast<double>(want)) <= kSnapTolerance;
  };
  rep.pass_degree = ok(in.degree, rep.snapped_degree, rep.predicted_degree);
  rep.pass_energy = ok(in.energy, rep.snapped_energy, rep.predicted_energy);
  rep.pass_e_prime = ok(in.e_prime, rep.snapped_e_prime, rep.predicted_e_prime);
  rep.pass_e_doubleprime = ok(in.e_doubleprime, rep.snapped_e_doubleprime, rep.predicted_e_doubleprime);
  const double ord = rep.tension.final_order();
  rep.pass_tension = ord >= kMinTensionOrder && ord <= kMaxTensionOrder;
}

}  // namespace detail

/// Quadrature and harmonicity checks for the non-minimal map φ₁.
inline VerificationReport verify(const HarmonicMapRep& phi, const QuadratureConfig& cfg = {}) {
  VerificationReport rep;
  rep.config = cfg;
  rep.integrals = integrate_invariants(phi, cfg);
  rep.tension = tension_study(phi);
  rep.predicted_degree = phi.predicted_degree();
  rep.predicted_energy = phi.predicted_energy();
  rep.predicted_e_prime = phi.predicted_e_prime();
  rep.predicted_e_doubleprime = phi.predicted_e_doubleprime();
  detail::fill_snaps(rep);
  return rep;
}

/// Same checks for the holomorphic map itself (E = E′ = k, E″ = 0).
inline VerificationReport verify_holomorphic(const HoloMap& f, const QuadratureConfig& cfg = {}) {
  VerificationReport rep;
  rep.config = cfg;
  rep.integrals = integrate_invariants(f, cfg);
  const BiTriple<Complex> lift{CBiPoly::holomorphic(f[0].to_complex()), CBiPoly::holomorphic(f[1].to_complex()),
                               CBiPoly::holomorphic(f[2].to_complex())};
  rep.tension = tension_study(lift);
  const long k = static_cast<long>(f.degree());
  rep.predicted_degree = rep.predicted_energy = rep.predicted_e_prime = k;
  rep.predicted_e_doubleprime = 0;
  detail::fill_snaps(rep);
  return rep;
}

}  // namespace harmap
