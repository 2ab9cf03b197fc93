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

GaussianRational Q(const char* re, const char* im = "0") { return GaussianRational::parse(re, im); }

}  // namespace

TEST(GaussianRational, CanonicalForm) {
  EXPECT_EQ(Q("2/4", "-3/6"), Q("1/2", "-1/2"));
  EXPECT_EQ(GaussianRational::to_fraction_string(Q("6/-4").re()), "-3/2");
  EXPECT_EQ(GaussianRational::to_fraction_string(Q("0/7").re()), "0/1");
}

TEST(GaussianRational, ParseRejectsGarbage) {
  EXPECT_THROW(Q("1/0"), ParseError);
  EXPECT_THROW(Q("x"), ParseError);
  EXPECT_THROW(Q("1.5"), ParseError);
  EXPECT_THROW(Q(""), ParseError);
}

TEST(GaussianRational, InverseOfZeroThrows) { EXPECT_THROW(GaussianRational(0).inverse(), DivisionByZero); }

TEST(GaussianRational, FieldAxiomsOnSamples) {
  Rng rng(11);
  for (int n = 0; n < 200; ++n) {
    const GaussianRational a(mpq_class(rng.uniform_int(-50, 50), rng.uniform_int(1, 30)),
                             mpq_class(rng.uniform_int(-50, 50), rng.uniform_int(1, 30)));
    const auto b = rng.gaussian_integer(9), c = rng.nonzero_gaussian_integer(9);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(c * c.inverse(), GaussianRational(1));
    EXPECT_EQ(a.conj().conj(), a);
    EXPECT_EQ(a * a.conj(), GaussianRational(a.norm(), mpq_class(0)));
  }
}

TEST(Polynomial, ZeroHasMinusInfinityDegree) {
  const Poly zero;
  EXPECT_TRUE(zero.degree().is_minus_infinity());
  EXPECT_LT(zero.degree(), Degree(0));
  EXPECT_EQ(P({0, 0, 0}), zero);
  EXPECT_THROW(zero.degree().value(), PreconditionError);
  EXPECT_TRUE((zero * P({1, 2})).degree().is_minus_infinity());
}

TEST(Polynomial, DerivativeExamples) {
  EXPECT_EQ(P({0, 0, 1}).derivative(), P({0, 2}));
  EXPECT_TRUE(P({5}).derivative().is_zero());
  EXPECT_EQ(P({1, 0, 0, 1}).derivative(), P({0, 0, 3}));
}

TEST(Polynomial, GcdExamples) {
  EXPECT_EQ(gcd(P({0, 0, 1}), P({0, 0, 0, 1})), P({0, 0, 1}));
  EXPECT_EQ(gcd(P({0, 2, 0, 0, -1}), P({0, 0, 3})), P({0, 1}));
  EXPECT_EQ(gcd(P({-1, 1}), P({1, 1})), P({1}));
  EXPECT_THROW(gcd(Poly{}, Poly{}), PreconditionError);
}

TEST(Polynomial, DivremExamples) {
  auto [q1, r1] = divrem(P({0, 0, 1}), P({0, 1}));
  EXPECT_EQ(q1, P({0, 1}));
  EXPECT_TRUE(r1.is_zero());
  auto [q2, r2] = divrem(P({1, 0, 0, 1}), P({1, 0, 1}));
  EXPECT_EQ(q2, P({0, 1}));
  EXPECT_EQ(r2, P({1, -1}));
  auto [q3, r3] = divrem(P({7}), P({0, 1}));
  EXPECT_TRUE(q3.is_zero());
  EXPECT_EQ(r3, P({7}));
  EXPECT_THROW(divrem(P({1}), Poly{}), DivisionByZero);
}

TEST(Polynomial, RandomGcdAndDivremProperties) {
  Rng rng(5);
  for (int n = 0; n < 100; ++n) {
    const Poly common = rng.polynomial(static_cast<std::size_t>(rng.uniform_int(0, 2)), 4);
    const Poly a = rng.polynomial(static_cast<std::size_t>(rng.uniform_int(0, 4)), 6) * common;
    const Poly b = rng.polynomial(static_cast<std::size_t>(rng.uniform_int(0, 4)), 6) * common;
    const Poly g = gcd(a, b);
    EXPECT_EQ(g.leading(), GaussianRational(1));
    EXPECT_TRUE((a % g).is_zero());
    EXPECT_TRUE((b % g).is_zero());
    EXPECT_TRUE((g % common.monic()).is_zero());
    auto [q, r] = divrem(a, b);
    EXPECT_EQ(q * b + r, a);
    EXPECT_LT(r.degree(), b.degree());
    EXPECT_EQ((a * b).degree(), a.degree() + b.degree());
  }
}

TEST(Polynomial, GcdAgreesWithFloatRoots) {
  // Common roots seen by an independent root finder must survive in the gcd.
  const Poly a = P({-2, 1}) * P({3, 1}) * P({1, 0, 1});
  const Poly b = P({-2, 1}) * P({1, 0, 1}) * P({5, 1});
  const auto g = gcd(a, b);
  const auto roots = oracle::aberth_roots(oracle::to_long(g));
  ASSERT_EQ(roots.size(), 3u);
  for (const auto& z : roots) {
    EXPECT_LT(std::abs(oracle::eval(oracle::to_long(a), z)), 1e-12L);
    EXPECT_LT(std::abs(oracle::eval(oracle::to_long(b), z)), 1e-12L);
  }
}

TEST(BiPolynomial, HermitianPairingExamples) {
  const PolyTriple u{P({1}), P({0, 1}), Poly{}};
  const BiPoly uu = hermitian_pairing(u, u);
  const BiPoly expected(BiPoly::Terms{{{0, 0}, GaussianRational(1)}, {{1, 1}, GaussianRational(1)}});
  EXPECT_EQ(uu, expected);
  EXPECT_TRUE(hermitian_pairing(PolyTriple{P({1}), Poly{}, Poly{}}, PolyTriple{Poly{}, P({1}), Poly{}}).is_zero());
  const PolyTriple p{P({2, 1}), P({0, 3}), P({-1, 0, 1})};
  const auto v = hermitian_pairing(p, p)(Complex(0, 0));
  EXPECT_NEAR(v.real(), 4 + 0 + 1, 1e-15);
}

TEST(BiPolynomial, ConjugationAndEvaluationProperties) {
  Rng rng(9);
  for (int n = 0; n < 50; ++n) {
    PolyTriple u, v;
    for (auto& q : u) q = rng.polynomial(static_cast<std::size_t>(rng.uniform_int(0, 3)), 5);
    for (auto& q : v) q = rng.polynomial(static_cast<std::size_t>(rng.uniform_int(0, 3)), 5);
    const BiPoly uv = hermitian_pairing(u, v), vu = hermitian_pairing(v, u);
    EXPECT_EQ(uv, vu.conj());
    EXPECT_EQ(uv.conj().conj(), uv);
    const Complex z(rng.uniform01() * 2 - 1, rng.uniform01() * 2 - 1);
    // Independent evaluation: Σ u_i(z) conj(v_i(z)).
    oracle::LComplex ref = 0;
    for (std::size_t i = 0; i < 3; ++i)
      ref += oracle::eval(oracle::to_long(u[i]), {z.real(), z.imag()}) *
             std::conj(oracle::eval(oracle::to_long(v[i]), {z.real(), z.imag()}));
    const Complex got = uv(z);
    const double scale = std::max(1.0, static_cast<double>(std::abs(ref)));
    EXPECT_LT(std::abs(got - Complex(static_cast<double>(ref.real()), static_cast<double>(ref.imag()))) / scale, 1e-12);
  }
}

TEST(ExactLinalg, RankDeterminantKernel) {
  Matrix<GaussianRational> m(3, 3);
  const long vals[3][3] = {{2, 1, 1}, {4, 3, 3}, {8, 7, 9}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = GaussianRational(vals[i][j]);
  EXPECT_EQ(exact_rank(m), 3u);
  // Cofactor expansion by hand: 2(27−21) − 1(36−24) + 1(28−24) = 4.
  EXPECT_EQ(exact_determinant(m), GaussianRational(4));

  Matrix<GaussianRational> s(2, 4);
  const long sv[2][4] = {{1, 2, 3, 4}, {2, 4, 6, 8}};
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 4; ++j) s(i, j) = GaussianRational(sv[i][j]);
  EXPECT_EQ(exact_rank(s), 1u);
  const auto ker = exact_kernel(s);
  EXPECT_EQ(ker.size(), 3u);
  for (const auto& u : ker)
    for (const auto& x : s.apply(u)) EXPECT_TRUE(x.is_zero());
}

TEST(ExactLinalg, RandomKernelProperty) {
  Rng rng(21);
  for (int n = 0; n < 40; ++n) {
    const std::size_t rows = static_cast<std::size_t>(rng.uniform_int(1, 4)),
                      cols = static_cast<std::size_t>(rng.uniform_int(1, 6));
    Matrix<GaussianRational> m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.gaussian_integer(rng.uniform_int(0, 1) ? 0 : 3);
    const auto ker = exact_kernel(m);
    EXPECT_EQ(ker.size() + exact_rank(m), cols);
    for (const auto& u : ker)
      for (const auto& x : m.apply(u)) EXPECT_TRUE(x.is_zero());
  }
}
