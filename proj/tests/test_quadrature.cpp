#include <gtest/gtest.h>

#include <Eigen/QR>

#include "harmap/harmap.hpp"

using namespace harmap;

namespace {

Poly P(std::initializer_list<long> c) {
  std::vector<GaussianRational> v;
  for (long x : c) v.emplace_back(x);
  return Poly(std::move(v));
}

HoloMap map(Poly a, Poly b, Poly c) { return HoloMap::validate({std::move(a), std::move(b), std::move(c)}); }

CBiPoly constant(Complex c) { return CBiPoly::holomorphic(CPoly::constant(c)); }

/// Non-harmonic control lift (1, z + z̄², z²).
BiTriple<Complex> control_lift() {
  const CBiPoly one = constant(1.0);
  const CBiPoly z = CBiPoly::holomorphic(CPoly({0.0, 1.0}));
  const CBiPoly zbar2 = CBiPoly::antiholomorphic_conj(CPoly({0.0, 0.0, 1.0}));
  return {one, z + zbar2, z * z};
}

/// Random unitary matrix from the QR factorisation of a seeded complex matrix.
Eigen::Matrix3cd random_unitary(Rng& rng) {
  Eigen::Matrix3cd m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = Complex(rng.uniform01() - 0.5, rng.uniform01() - 0.5);
  return Eigen::HouseholderQR<Eigen::Matrix3cd>(m).householderQ();
}

BiTriple<Complex> rotate(const Eigen::Matrix3cd& u, const BiTriple<Complex>& v) {
  BiTriple<Complex> out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[static_cast<std::size_t>(i)] += constant(u(i, j)) * v[static_cast<std::size_t>(j)];
  return out;
}

}  // namespace

TEST(Quadrature, CalibrationIntegral) {
  // ∬ (1 + r²)⁻² r dr dθ = π, so with the 1/π normalisation E′ = 1 exactly.
  const BiTriple<Complex> lift{constant(1.0), CBiPoly::holomorphic(CPoly({0.0, 1.0})), CBiPoly{}};
  const auto in = integrate_invariants(lift, QuadratureConfig{});
  EXPECT_NEAR(in.e_prime, 1.0, 1e-9);
  EXPECT_NEAR(in.e_doubleprime, 0.0, 1e-9);
}

TEST(Quadrature, HolomorphicCalibrationUpToDegreeFour) {
  const HoloMap maps[] = {map(P({1}), P({0, 1}), Poly{}), map(P({1}), P({0, 1}), P({0, 0, 1})),
                          map(P({1}), P({0, 1}), P({0, 0, 0, 1})), map(P({1, 0, 0, 1}), P({0, 0, 1}), P({0, 0, 0, 1})),
                          map(P({1}), P({0, 0, 1}), P({0, 0, 0, 0, 1}))};
  for (const auto& f : maps) {
    const auto in = integrate_invariants(f, QuadratureConfig{});
    const double k = static_cast<double>(f.degree());
    EXPECT_NEAR(in.energy, k, 1e-3);
    EXPECT_NEAR(in.degree, k, 1e-3);
    EXPECT_NEAR(in.e_doubleprime, 0.0, 1e-3);
  }
}

TEST(Quadrature, GaussTransformExamples) {
  const auto phi = gauss_transform(map(P({1}), P({0, 1}), P({0, 0, 0, 1})));
  const auto in = integrate_invariants(phi, QuadratureConfig{});
  EXPECT_NEAR(in.degree, 0.0, 1e-2);
  EXPECT_NEAR(in.energy, 6.0, 1e-2);
  EXPECT_NEAR(in.e_prime, 3.0, 1e-2);
  EXPECT_NEAR(in.e_doubleprime, 3.0, 1e-2);
  EXPECT_LT(in.error_estimate, 0.5);
}

TEST(Quadrature, SnappingForSampledMaps) {
  const std::pair<std::size_t, std::size_t> strata[] = {{2, 0}, {3, 0}, {3, 1}, {4, 1}, {4, 2}, {5, 3}};
  for (std::size_t n = 0; n < std::size(strata); ++n) {
    const auto [k, r] = strata[n];
    const auto phi = gauss_transform(sample_stratum(k, r, 40 + n).f);
    const auto rep = verify(phi);
    EXPECT_TRUE(rep.passed()) << "k=" << k << " r=" << r << " degree=" << rep.integrals.degree
                              << " energy=" << rep.integrals.energy;
    EXPECT_EQ(rep.snapped_e_prime, static_cast<long>(2 * k - 2 - r));
    EXPECT_EQ(rep.snapped_e_doubleprime, static_cast<long>(k));
  }
}

TEST(Quadrature, DegreeAndEnergyInvariantUnderUnitaryRotation) {
  Rng rng(77);
  const auto phi = gauss_transform(sample_stratum(4, 1, 9).f);
  const auto pts = phi.ramification().divisor.roots_approx();
  const auto base = integrate_invariants(phi.float_lift(), QuadratureConfig{}, pts);
  for (int n = 0; n < 3; ++n) {
    const auto rotated = integrate_invariants(rotate(random_unitary(rng), phi.float_lift()), QuadratureConfig{}, pts);
    EXPECT_NEAR(rotated.degree, base.degree, 1e-3);
    EXPECT_NEAR(rotated.energy, base.energy, 1e-3);
  }
}

TEST(Quadrature, ConfigValidation) {
  QuadratureConfig c;
  c.resolution = 2;
  EXPECT_THROW(c.validate(), PreconditionError);
  c = {};
  c.overlap_radius = 0.5;
  EXPECT_THROW(c.validate(), PreconditionError);
  EXPECT_THROW(integrate_invariants(BiTriple<Complex>{}, QuadratureConfig{}), PreconditionError);
}

TEST(Tension, SecondOrderForHarmonicMaps) {
  const auto phi = gauss_transform(map(P({1}), P({0, 1}), P({0, 0, 1})));
  const auto st = tension_study(phi);
  ASSERT_EQ(st.samples.size(), 4u);
  const double ratio = st.samples[0].residual / st.samples[1].residual;
  EXPECT_NEAR(ratio, 4.0, 0.4);
  EXPECT_GE(st.final_order(), kMinTensionOrder);
  EXPECT_LE(st.final_order(), kMaxTensionOrder);
}

TEST(Tension, HolomorphicMapResidualVanishes) {
  const HoloMap f = map(P({1}), P({0, 1}), P({0, 0, 1}));
  const auto rep = verify_holomorphic(f);
  EXPECT_LT(rep.tension.samples.back().residual, rep.tension.samples.front().residual / 10);
  EXPECT_TRUE(rep.passed());
}

TEST(Tension, ControlMapPlateaus) {
  const auto st = tension_study(control_lift());
  for (std::size_t l = 0; l + 1 < st.samples.size(); ++l) {
    EXPECT_GT(st.samples[l].residual, 1.0);
    EXPECT_GT(st.samples[l + 1].residual, 0.9 * st.samples[l].residual);
  }
}

TEST(Tension, RejectsNonPositiveStep) {
  const auto phi = gauss_transform(map(P({1}), P({0, 1}), P({0, 0, 1})));
  EXPECT_THROW(tension_residual(phi, 0.0), PreconditionError);
}
