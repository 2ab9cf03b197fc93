#include <gtest/gtest.h>

#include "harmap/harmap.hpp"
#include "oracles.hpp"

using namespace harmap;

namespace {

Poly P(std::initializer_list<long> c) {
  std::vector<GaussianRational> v;
  for (long x : c) v.emplace_back(x);
  return Poly(std::move(v));
}

HoloMap map(Poly a, Poly b, Poly c) { return HoloMap::validate({std::move(a), std::move(b), std::move(c)}); }

HoloMap random_map(Rng& rng, std::size_t k) {
  for (;;) {
    PolyTriple p{rng.polynomial(k, 5), rng.polynomial(static_cast<std::size_t>(rng.uniform_int(0, static_cast<long>(k))), 5),
                 rng.polynomial(static_cast<std::size_t>(rng.uniform_int(0, static_cast<long>(k))), 5)};
    try {
      return HoloMap::validate(p);
    } catch (const NotAMap&) {
    }
  }
}

Matrix<GaussianRational> random_invertible(Rng& rng) {
  for (;;) {
    Matrix<GaussianRational> a(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) a(i, j) = rng.gaussian_integer(3);
    if (!exact_determinant(a).is_zero()) return a;
  }
}

}  // namespace

TEST(HoloMap, ValidateExamples) {
  EXPECT_EQ(map(P({1}), P({0, 1}), P({0, 0, 1})).degree(), 2u);
  EXPECT_THROW(map(P({0, 1}), P({0, 0, 1}), P({0, 0, 0, 1})), NotAMap);
  EXPECT_EQ(map(P({1, 0, 0, 1}), P({0, 0, 1}), P({0, 0, 0, 1})).degree(), 3u);
  EXPECT_THROW(map(Poly{}, Poly{}, Poly{}), NotAMap);
}

TEST(HoloMap, CanonicalRepresentativeMakesScalingInvisible) {
  const HoloMap f = map(P({1}), P({0, 1}), P({0, 0, 1}));
  const GaussianRational c(3, -2);
  EXPECT_EQ(HoloMap::validate({P({1}) * c, P({0, 1}) * c, P({0, 0, 1}) * c}), f);
  EXPECT_EQ(f[0].leading(), GaussianRational(1));
}

TEST(HoloMap, FullnessExamples) {
  EXPECT_TRUE(is_full(map(P({1}), P({0, 1}), P({0, 0, 1}))));
  EXPECT_FALSE(is_full(map(P({1}), P({0, 1}), P({1, 1}))));
  EXPECT_TRUE(is_full(map(P({1, 0, 0, 1}), P({0, 0, 1}), P({0, 0, 0, 1}))));
}

TEST(HoloMap, FullnessAgreesWithFloatRank) {
  Rng rng(3);
  for (int n = 0; n < 60; ++n) {
    HoloMap f = random_map(rng, static_cast<std::size_t>(rng.uniform_int(1, 4)));
    if (n % 3 == 0) {
      // Force a dependency p2 = c0 p0 + c1 p1.
      const auto c0 = rng.gaussian_integer(2), c1 = rng.gaussian_integer(2);
      try {
        f = HoloMap::validate({f[0], f[1], f[0] * c0 + f[1] * c1});
      } catch (const NotAMap&) {
        continue;
      }
    }
    EXPECT_EQ(is_full(f), oracle::float_rank(f.components()) == 3);
  }
}

TEST(HoloMap, WedgeExamples) {
  EXPECT_EQ(wedge_curve(map(P({1}), P({0, 1}), P({0, 0, 1}))), (PolyTriple{P({1}), P({0, 2}), P({0, 0, 1})}));
  EXPECT_EQ(wedge_curve(map(P({1}), P({0, 1}), P({0, 0, 0, 1}))), (PolyTriple{P({1}), P({0, 0, 3}), P({0, 0, 0, 2})}));
  EXPECT_EQ(wedge_curve(map(P({1}), P({0, 0, 1}), P({0, 0, 0, 0, 1}))),
            (PolyTriple{P({0, 2}), P({0, 0, 0, 4}), P({0, 0, 0, 0, 0, 2})}));
}

TEST(HoloMap, WedgeAgreesWithFloatMinors) {
  Rng rng(8);
  for (int n = 0; n < 30; ++n) {
    const HoloMap f = random_map(rng, static_cast<std::size_t>(rng.uniform_int(1, 5)));
    const auto h = wedge_curve(f);
    const auto ref = oracle::wedge(f.components());
    for (std::size_t i = 0; i < 3; ++i) {
      const auto got = oracle::to_long(h[i]);
      ASSERT_EQ(got.size(), ref[i].size());
      for (std::size_t j = 0; j < got.size(); ++j) EXPECT_LT(std::abs(got[j] - ref[i][j]), 1e-9L);
    }
  }
}

TEST(HoloMap, RamificationExamples) {
  const auto r0 = ramification_data(map(P({1}), P({0, 1}), P({0, 0, 1})));
  EXPECT_EQ(r0.index(), 0u);
  EXPECT_TRUE(r0.divisor.empty());
  EXPECT_EQ(r0.curve.degree, 2u);
  EXPECT_EQ(r0.curve.q, (PolyTriple{P({1}), P({0, 2}), P({0, 0, 1})}));

  const auto r1 = ramification_data(map(P({1}), P({0, 1}), P({0, 0, 0, 1})));
  EXPECT_EQ(r1.index(), 1u);
  EXPECT_EQ(r1.divisor, Divisor(P({1}), 1));

  const auto r2 = ramification_data(map(P({1}), P({0, 0, 1}), P({0, 0, 0, 0, 1})));
  EXPECT_EQ(r2.index(), 2u);
  EXPECT_EQ(r2.divisor, Divisor(P({0, 1}), 1));
  EXPECT_EQ(r2.curve.q, (PolyTriple{P({2}), P({0, 0, 4}), P({0, 0, 0, 0, 2})}));
  EXPECT_EQ(r2.curve.degree, 4u);

  EXPECT_THROW(ramification_data(map(P({1}), P({0, 1}), P({1, 1}))), NotFull);
}

TEST(HoloMap, RamificationAgreesWithRootClusterOracle) {
  for (std::uint64_t s = 0; s < 12; ++s) {
    const std::size_t k = 3 + s % 2, r = s % 2 == 0 ? 1 : 2;
    const auto pt = sample_stratum(k, r, s);
    for (bool rev : {false, true}) {
      const PolyTriple p = rev ? oracle::reversed(pt.f.components(), k) : pt.f.components();
      const HoloMap f = HoloMap::validate(p);
      const auto ram = ramification_data(f);
      const auto ref = oracle::ramification(p, k);
      EXPECT_EQ(ram.index(), ref.index());
      EXPECT_EQ(ram.divisor.infinity_multiplicity(), ref.inf);
      for (const auto& c : ref.finite) {
        const Complex z(static_cast<double>(c.center.real()), static_cast<double>(c.center.imag()));
        EXPECT_LT(std::abs(ram.divisor.finite_part().to_complex()(z)), 1e-6);
      }
    }
  }
}

TEST(HoloMap, WedgeDegreeAndFactorisationProperties) {
  Rng rng(17);
  for (int n = 0; n < 60; ++n) {
    const std::size_t k = static_cast<std::size_t>(rng.uniform_int(2, 5));
    const HoloMap f = random_map(rng, k);
    const auto h = wedge_curve(f);
    for (const auto& c : h) EXPECT_LE(c.degree(), Degree(2 * k - 2));
    EXPECT_TRUE(dependency_identity_check(f));
    if (!is_full(f)) continue;
    const auto ram = ramification_data(f);
    const Poly b = gcd<GaussianRational>(std::span<const Poly>(h));
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(b * ram.curve.q[i], h[i]);
    EXPECT_TRUE(gcd<GaussianRational>(std::span<const Poly>(ram.curve.q)).is_constant());
    EXPECT_LE(ram.index(), 2 * k - 2);
    EXPECT_LE(2 * ram.index(), 3 * k - 6);
  }
}

TEST(HoloMap, AutomorphismExamples) {
  const HoloMap f = map(P({1}), P({0, 1}), P({0, 0, 1}));
  EXPECT_EQ(apply_automorphism(Matrix<GaussianRational>::identity(3), f), f);
  Matrix<GaussianRational> d = Matrix<GaussianRational>::identity(3);
  d(2, 2) = GaussianRational(2);
  const HoloMap g = apply_automorphism(d, f);
  EXPECT_EQ(g, map(P({1}), P({0, 1}), P({0, 0, 2})));
  EXPECT_EQ(ramification_data(g).index(), 0u);

  Matrix<GaussianRational> swap(3, 3);
  swap(0, 1) = swap(1, 0) = swap(2, 2) = GaussianRational(1);
  const HoloMap h = map(P({1}), P({0, 1}), P({0, 0, 0, 1}));
  const HoloMap hs = apply_automorphism(swap, h);
  EXPECT_EQ(hs, map(P({0, 1}), P({1}), P({0, 0, 0, 1})));
  EXPECT_EQ(ramification_data(hs).divisor, Divisor(P({1}), 1));

  EXPECT_THROW(apply_automorphism(Matrix<GaussianRational>(3, 3), f), SingularMatrix);
}

TEST(HoloMap, DivisorInvariantUnderAutomorphisms) {
  const std::pair<std::size_t, std::size_t> strata[] = {{2, 0}, {3, 0}, {3, 1}, {4, 0}, {4, 1}, {4, 2}, {5, 1}, {5, 3}};
  Rng rng(23);
  for (int n = 0; n < 40; ++n) {
    const auto [k, r] = strata[n % 8];
    const HoloMap f = sample_stratum(k, r, static_cast<std::uint64_t>(n)).f;
    const HoloMap g = apply_automorphism(random_invertible(rng), f);
    EXPECT_EQ(ramification_data(g).divisor, ramification_data(f).divisor);
  }
}

TEST(HoloMap, MirrorExamplesAndInvolution) {
  const HoloMap f = map(P({1}), P({0, 1}), P({0, 0, 1}));
  EXPECT_EQ(mirror(f), f);
  const HoloMap g = map(Poly({GaussianRational(0, 1)}), P({0, 1}), P({0, 0, 1}));
  EXPECT_EQ(mirror(g), map(Poly({GaussianRational(0, -1)}), P({0, 1}), P({0, 0, 1})));
  Rng rng(4);
  for (int n = 0; n < 30; ++n) {
    const HoloMap h = random_map(rng, static_cast<std::size_t>(rng.uniform_int(1, 5)));
    EXPECT_EQ(mirror(mirror(h)), h);
  }
}

TEST(HoloMap, DependencyIdentityExamples) {
  EXPECT_TRUE(dependency_identity_check(map(P({1}), P({0, 1}), P({0, 0, 1}))));
  EXPECT_TRUE(dependency_identity_check(map(P({1, 0, 0, 1}), P({0, 0, 1}), P({0, 0, 0, 1}))));
  Rng rng(31);
  EXPECT_TRUE(dependency_identity_check(random_map(rng, 5)));
}
