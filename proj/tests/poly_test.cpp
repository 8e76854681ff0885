#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "dessin/poly.hpp"
#include "dessin/shabat.hpp"

using namespace dessin;
using std::numbers::pi;

namespace {

bool contains_value(const std::vector<cplx>& vs, cplx v, double tol = 1e-8) {
  return std::any_of(vs.begin(), vs.end(), [&](cplx w) { return std::abs(w - v) <= tol; });
}

Poly random_poly(int degree, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<cplx> c;
  for (int k = 0; k <= degree; ++k) c.emplace_back(u(rng), u(rng));
  if (std::abs(c.back()) < 0.1) c.back() = 1.0;
  return Poly(std::move(c));
}

}  // namespace

TEST(Poly, Evaluate) {
  const Poly p({1.0, 0.0, 0.0, 1.0});  // z^3 + 1
  EXPECT_EQ(evaluate(p, 2.0), cplx(9.0));
  EXPECT_EQ(evaluate(p, cplx(0.0, 1.0)), cplx(1.0, -1.0));
  EXPECT_NEAR(std::abs(evaluate(chebyshev(3), 1.0) - 1.0), 0.0, 1e-15);
}

TEST(Poly, Derivative) {
  const Poly p({1.0, 0.0, 0.0, 1.0});
  const Poly d = derivative(p);
  EXPECT_EQ(d.degree(), 2);
  EXPECT_EQ(d.coeff(2), cplx(3.0));
  EXPECT_EQ(derivative(p, 3).degree(), 0);
  EXPECT_EQ(derivative(p, 3).coeff(0), cplx(6.0));
  EXPECT_TRUE(derivative(Poly({5.0})).is_zero());
}

TEST(Poly, ArithmeticAndTrimming) {
  const Poly a({1.0, 2.0}), b({-1.0, -2.0});
  EXPECT_TRUE((a + b).is_zero());
  EXPECT_EQ((a + b).degree(), -1);
  const Poly prod = a * a;
  EXPECT_EQ(prod.coeff(2), cplx(4.0));
  EXPECT_EQ(prod.coeff(1), cplx(4.0));
  const Poly fr = Poly::from_roots({{1.0, 2}, {-2.0, 1}}, 3.0);
  EXPECT_EQ(fr.degree(), 3);
  EXPECT_NEAR(std::abs(fr(1.0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(fr(-2.0)), 0.0, 1e-14);
  EXPECT_EQ(fr.leading(), cplx(3.0));
}

TEST(Poly, RootsOfUnity) {
  const Poly p = Poly::monomial(5) + cplx{-1.0};
  const auto zs = roots(p);
  ASSERT_EQ(zs.size(), 5u);
  for (int k = 0; k < 5; ++k) EXPECT_TRUE(contains_value(zs, std::polar(1.0, 2 * pi * k / 5), 1e-12));
}

TEST(Poly, ChebyshevSmallDegrees) {
  EXPECT_EQ(chebyshev_integer(0), (std::vector<std::int64_t>{1}));
  EXPECT_EQ(chebyshev_integer(1), (std::vector<std::int64_t>{0, 1}));
  EXPECT_EQ(chebyshev_integer(2), (std::vector<std::int64_t>{-1, 0, 2}));
  EXPECT_EQ(chebyshev_integer(3), (std::vector<std::int64_t>{0, -3, 0, 4}));
  EXPECT_THROW((void)chebyshev(0), Error);
}

TEST(Poly, ChebyshevCosineIdentity) {
  for (int n = 1; n <= 12; ++n) {
    const Poly t = chebyshev(n);
    for (int k = 0; k <= 50; ++k) {
      const double th = pi * k / 50.0;
      EXPECT_NEAR(t(std::cos(th)).real(), std::cos(n * th), 1e-10) << "n=" << n;
    }
  }
}

TEST(Poly, ChebyshevIntegerRecurrenceAgreesWithTrigDefinition) {
  // Independent check: coefficients of T_n from cos(n t) = Re (cos t + i sin t)^n
  // binomial expansion, with sin^2 = 1 - cos^2.
  for (int n = 0; n <= 12; ++n) {
    std::vector<double> ref(static_cast<std::size_t>(n + 1), 0.0);
    auto binom = [](int a, int b) {
      double r = 1;
      for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
      return r;
    };
    for (int k = 0; 2 * k <= n; ++k) {
      // C(n, 2k) (-1)^k c^(n-2k) (1-c^2)^k
      for (int j = 0; j <= k; ++j)
        ref[static_cast<std::size_t>(n - 2 * k + 2 * j)] +=
            binom(n, 2 * k) * ((k % 2) ? -1 : 1) * binom(k, j) * ((j % 2) ? -1 : 1);
    }
    const auto mine = chebyshev_integer(n);
    ASSERT_EQ(mine.size(), ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_EQ(static_cast<double>(mine[i]), ref[i]) << n;
  }
}

TEST(Poly, CriticalDataMonomial) {
  for (int n = 2; n <= 8; ++n) {
    const CriticalData cd = critical_data(Poly::monomial(n));
    ASSERT_EQ(cd.points.size(), 1u) << n;
    EXPECT_NEAR(std::abs(cd.points[0].z), 0.0, 1e-3);
    EXPECT_EQ(cd.points[0].multiplicity, n);
    ASSERT_EQ(cd.values.size(), 1u);
    EXPECT_NEAR(std::abs(cd.values[0]), 0.0, 1e-8);
  }
}

TEST(Poly, CriticalDataTwoStar) {
  const Poly p = family_polynomial(Family::two_star, 3).poly;  // (z^3 - 1)^2
  const CriticalData cd = critical_data(p);
  ASSERT_EQ(cd.values.size(), 2u);
  EXPECT_TRUE(contains_value(cd.values, 0.0));
  EXPECT_TRUE(contains_value(cd.values, 1.0));
  EXPECT_EQ(cd.points.size(), 4u);
}

TEST(Poly, CriticalDataDegreeOne) {
  const CriticalData cd = critical_data(Poly({1.0, 2.0}));
  EXPECT_TRUE(cd.points.empty());
  EXPECT_TRUE(cd.values.empty());
  EXPECT_THROW((void)critical_data(Poly({3.0})), Error);
  EXPECT_THROW((void)critical_data(Poly({0.0, 1.0}), 0.0), Error);
}

TEST(Poly, CriticalDataAmbiguity) {
  // Two simple critical points 2e-5 apart (further than tol, closer than
  // 10 tol) with clearly different values, so they are not merged either.
  const double d = 1e-5, k = 1e12;
  const Poly p({0.0, -k * d * d, 0.0, k / 3.0});  // p' = k (z^2 - d^2)
  try {
    (void)critical_data(p, 5e-6);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ambiguity);
  }
}

TEST(Poly, ChebyshevCriticalValues) {
  for (int n = 3; n <= 10; ++n) {
    const CriticalData cd = critical_data(chebyshev(n));
    EXPECT_EQ(cd.points.size(), static_cast<std::size_t>(n - 1));
    EXPECT_EQ(cd.values.size(), 2u);
    EXPECT_TRUE(contains_value(cd.values, -1.0));
    EXPECT_TRUE(contains_value(cd.values, 1.0));
  }
}

TEST(Poly, AffineEquivalenceNormalizesChebyshev) {
  const AffineEquivalence e{0.5, 0.5, 1.0, 0.0};
  const Poly q = apply_equivalence(chebyshev(3), e);
  const CriticalData cd = critical_data(q);
  ASSERT_EQ(cd.values.size(), 2u);
  EXPECT_TRUE(contains_value(cd.values, 0.0));
  EXPECT_TRUE(contains_value(cd.values, 1.0));
  EXPECT_NEAR(std::abs(transform_value(e, -1.0)), 0.0, 1e-15);

  const AffineEquivalence n = normalizing_equivalence(-1.0, 1.0);
  EXPECT_NEAR(std::abs(n.A - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(n.B - 0.5), 0.0, 1e-15);
  EXPECT_THROW((void)normalizing_equivalence(1.0, 1.0), Error);
}

TEST(Poly, AffineEquivalenceValidation) {
  EXPECT_THROW((void)apply_equivalence(chebyshev(2), {0.0, 0.0, 1.0, 0.0}), Error);
  EXPECT_THROW((void)apply_equivalence(chebyshev(2), {1.0, 0.0, 0.0, 0.0}), Error);
}

TEST(PolyProperties, EquivalenceInverseRoundTrip) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Poly p = random_poly(1 + static_cast<int>(rng() % 8), rng);
    AffineEquivalence e{{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)}};
    if (std::abs(e.A) < 0.3) e.A += 1.0;
    if (std::abs(e.a) < 0.3) e.a += 1.0;
    const Poly back = apply_equivalence(apply_equivalence(p, e), inverse(e));
    ASSERT_EQ(back.degree(), p.degree());
    for (int k = 0; k <= p.degree(); ++k) EXPECT_NEAR(std::abs(back.coeff(k) - p.coeff(k)), 0.0, 1e-9);
    // pointwise definition Q(z) = A P(a z + b) + B
    const Poly q = apply_equivalence(p, e);
    const cplx z{u(rng), u(rng)};
    EXPECT_NEAR(std::abs(q(z) - (e.A * p(e.a * z + e.b) + e.B)), 0.0, 1e-9 * std::max(1.0, std::abs(q(z))));
  }
}

TEST(PolyProperties, CriticalValuesTransformAffinely) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const Poly p = random_poly(2 + static_cast<int>(rng() % 5), rng);
    const AffineEquivalence e{{1.5, -0.5}, {0.25, 1.0}, {0.0, 1.0}, {0.5, 0.0}};
    const CriticalData a = critical_data(p), b = critical_data(apply_equivalence(p, e));
    ASSERT_EQ(a.values.size(), b.values.size());
    for (const cplx v : a.values) EXPECT_TRUE(contains_value(b.values, transform_value(e, v), 1e-6));
  }
}

TEST(Rational, Arithmetic) {
  EXPECT_EQ(Rational(2, 4).to_string(), "1/2");
  EXPECT_EQ(Rational(-3, -6).to_string(), "1/2");
  EXPECT_EQ(Rational(4, -2).to_string(), "-2");
  EXPECT_EQ((Rational(1, 2) + Rational(1, 3)).to_string(), "5/6");
  EXPECT_EQ((Rational(1, 2) - Rational(3, 2)).to_string(), "-1");
  EXPECT_EQ((Rational(1, 2) / Rational(1, 4)).to_string(), "2");
  EXPECT_THROW((void)Rational(1, 0), Error);
}

TEST(Shabat, FamilyPolynomialsHaveTwoCriticalValues) {
  for (Family f : {Family::star, Family::two_star, Family::chain})
    for (int n = 2; n <= 8; ++n) {
      const ShabatPolynomial sp = family_polynomial(f, n);
      EXPECT_TRUE(multiplicities_consistent(sp)) << to_string(f) << n;
      EXPECT_LE(shabat_fibre_residual(sp), 1e-10) << to_string(f) << n;
      const CriticalData cd = critical_data(sp.poly);
      for (const cplx v : cd.values) EXPECT_TRUE(contains_value({0.0, 1.0}, v, 1e-8)) << to_string(f) << n;
    }
}

TEST(Shabat, StarFibres) {
  const ShabatPolynomial sp = family_polynomial(Family::star, 4);
  ASSERT_EQ(sp.black_roots.size(), 1u);
  EXPECT_EQ(sp.black_roots[0].multiplicity, 4);
  EXPECT_EQ(sp.white_roots.size(), 4u);
}

TEST(Shabat, TwoStarFibres) {
  const ShabatPolynomial sp = family_polynomial(Family::two_star, 3);
  EXPECT_EQ(sp.degree(), 6);
  ASSERT_EQ(sp.black_roots.size(), 3u);
  for (const auto& r : sp.black_roots) {
    EXPECT_NEAR(std::abs(r.root), 1.0, 1e-15);
    EXPECT_EQ(r.multiplicity, 2);
  }
  EXPECT_EQ(sp.white_roots.size(), 4u);
}

TEST(Shabat, ChainFibres) {
  const ShabatPolynomial sp = family_polynomial(Family::chain, 4);
  int b = 0, w = 0;
  for (const auto& r : sp.black_roots) b += r.multiplicity;
  for (const auto& r : sp.white_roots) w += r.multiplicity;
  EXPECT_EQ(b, 4);
  EXPECT_EQ(w, 4);
  EXPECT_EQ(sp.black_roots.size(), 2u);  // cos(pi/4), cos(3 pi/4)
  EXPECT_EQ(sp.white_roots.size(), 3u);  // 1, 0, -1
}

TEST(Shabat, ParseFamily) {
  EXPECT_EQ(parse_family("star"), Family::star);
  EXPECT_EQ(parse_family("two-star"), Family::two_star);
  EXPECT_EQ(parse_family("chain"), Family::chain);
  EXPECT_THROW((void)parse_family("tree"), Error);
  EXPECT_THROW((void)family_polynomial(Family::star, 0), Error);
}
