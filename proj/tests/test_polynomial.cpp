#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "remez/polynomial.hpp"
#include "remez/random.hpp"

using namespace remez;

namespace {

Polynomial chebyshev_t3() {
  const double c[] = {0.0, -3.0, 0.0, 4.0};
  return Polynomial::univariate(c);
}

std::vector<double> pt(std::initializer_list<double> xs) { return xs; }

}  // namespace

TEST(Polynomial, ConstantEvaluatesEverywhere) {
  const auto p = Polynomial::constant(3, 5.0);
  EXPECT_EQ(p(pt({0.3, -7.0, 2.0})), 5.0);
  EXPECT_EQ(p.degree(), 0u);
}

TEST(Polynomial, TwoVariableArithmetic) {
  // x1^2 + 2 x1 x2 at (1, 2)
  const Polynomial p(2, {{{2, 0}, 1.0}, {{1, 1}, 2.0}});
  EXPECT_DOUBLE_EQ(p(pt({1.0, 2.0})), 5.0);
  EXPECT_EQ(p.degree(), 2u);
}

TEST(Polynomial, ChebyshevT3AtHalf) { EXPECT_DOUBLE_EQ(chebyshev_t3()(pt({0.5})), -1.0); }

TEST(Polynomial, DimensionMismatchThrows) {
  const Polynomial p(2, {{{1, 0}, 1.0}});
  EXPECT_THROW(p(pt({1.0})), DimensionError);
  EXPECT_THROW(p(pt({1.0, 2.0, 3.0})), DimensionError);
}

TEST(Polynomial, ZeroCoefficientsArePrunedAndDegreeFollows) {
  const Polynomial p(1, {{{3}, 0.0}, {{1}, 2.0}});
  EXPECT_EQ(p.terms().size(), 1u);
  EXPECT_EQ(p.degree(), 1u);
  const Polynomial zero(2, {{{4, 1}, 0.0}});
  EXPECT_TRUE(zero.is_zero());
  EXPECT_EQ(zero.degree(), 0u);
}

TEST(PolynomialMap, EuclideanAndSupNorms) {
  const double t[] = {0.0, 1.0};
  const double t2[] = {0.0, 0.0, 1.0};
  std::vector<Polynomial> comps{Polynomial::univariate(t), Polynomial::univariate(t2)};
  EXPECT_DOUBLE_EQ(eval_map_norm(PolynomialMap(comps, CodomainNorm::euclidean), pt({2.0})), std::sqrt(20.0));
  EXPECT_DOUBLE_EQ(eval_map_norm(PolynomialMap(comps, CodomainNorm::sup), pt({2.0})), 4.0);
  EXPECT_DOUBLE_EQ(eval_map_norm(PolynomialMap(comps, CodomainNorm::one), pt({2.0})), 6.0);
}

TEST(PolynomialMap, ZeroMapHasZeroNorm) {
  const PolynomialMap zero({Polynomial(2), Polynomial(2)}, CodomainNorm::euclidean);
  EXPECT_EQ(eval_map_norm(zero, pt({0.4, -3.0})), 0.0);
}

TEST(PolynomialMap, NormIsAbsolutelyHomogeneous) {
  Stream rng(11);
  for (auto norm : {CodomainNorm::euclidean, CodomainNorm::sup, CodomainNorm::one}) {
    const PolynomialMap f({random_polynomial(2, 3, 1), random_polynomial(2, 2, 2), random_polynomial(2, 1, 3)}, norm);
    for (int i = 0; i < 50; ++i) {
      const double alpha = rng.uniform(-5.0, 5.0);
      const std::vector<double> x{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
      const double base = eval_map_norm(f, x);
      EXPECT_NEAR(eval_map_norm(f.scaled(alpha), x), std::abs(alpha) * base, 1e-12 * (1.0 + std::abs(alpha) * base));
    }
  }
}

TEST(PolynomialMap, MismatchedComponentsRejected) {
  EXPECT_THROW(PolynomialMap({Polynomial(1), Polynomial(2)}, CodomainNorm::sup), DimensionError);
}

TEST(TrigPolynomial, SingleFunctionalHasUnitModulus) {
  const TrigPolynomial f({{1.3, -0.7}});
  EXPECT_NEAR(eval_trig_modulus(f, pt({0.9, 2.1})), 1.0, 1e-15);
}

TEST(TrigPolynomial, AlignedPhasesAtOrigin) {
  const TrigPolynomial f({{1.0, 2.0}, {1.0, 2.0}});
  EXPECT_DOUBLE_EQ(eval_trig_modulus(f, pt({0.0, 0.0})), 2.0);
}

TEST(TrigPolynomial, OppositePhasesCancel) {
  const TrigPolynomial f({{0.0}, {1.0}});
  EXPECT_NEAR(eval_trig_modulus(f, pt({std::numbers::pi})), 0.0, 1e-15);
}

TEST(TrigPolynomial, ModulusBoundedByDegree) {
  Stream rng(5);
  for (int i = 0; i < 200; ++i) {
    std::vector<std::vector<double>> l(1 + rng.below(6), std::vector<double>(3));
    for (auto& v : l)
      for (auto& x : v) x = rng.normal() * 3.0;
    const TrigPolynomial f(l);
    const std::vector<double> x{rng.normal(), rng.normal(), rng.normal()};
    const double m = eval_trig_modulus(f, x);
    EXPECT_GE(m, 0.0);
    EXPECT_LE(m, static_cast<double>(f.degree()));
  }
}

TEST(RestrictToLine, ProductAlongDiagonalIsTSquared) {
  const Polynomial p(2, {{{1, 1}, 1.0}});
  const auto q = restrict_to_line(p, pt({0.0, 0.0}), pt({1.0, 1.0}));
  const double t2[] = {0.0, 0.0, 1.0};
  EXPECT_EQ(q, Polynomial::univariate(t2));
}

TEST(RestrictToLine, LinearStaysLinear) {
  const Polynomial p(3, {{{1, 0, 0}, 2.0}, {{0, 1, 0}, -1.0}, {{0, 0, 0}, 0.5}});
  EXPECT_LE(restrict_to_line(p, pt({1.0, 2.0, 3.0}), pt({0.1, 0.2, -4.0})).degree(), 1u);
}

TEST(RestrictToLine, ZeroDirectionThrows) {
  const Polynomial p(2, {{{1, 1}, 1.0}});
  EXPECT_THROW(restrict_to_line(p, pt({0.0, 0.0}), pt({0.0, 0.0})), std::invalid_argument);
}

TEST(RestrictToLine, CommutesWithEvaluation) {
  Stream rng(2024);
  for (int inst = 0; inst < 1000; ++inst) {
    const std::size_t n = 1 + rng.below(4);
    const unsigned d = static_cast<unsigned>(rng.below(6));
    const auto p = random_polynomial(n, d, rng());
    std::vector<double> a(n), v(n);
    for (auto& x : a) x = rng.uniform(-1.0, 1.0);
    for (auto& x : v) x = rng.uniform(-1.0, 1.0);
    const auto q = restrict_to_line(p, a, v);
    EXPECT_LE(q.degree(), p.degree());
    for (int k = 0; k < 20; ++k) {
      const double t = rng.uniform(-2.0, 2.0);
      std::vector<double> x(n);
      for (std::size_t j = 0; j < n; ++j) x[j] = a[j] + t * v[j];
      const double direct = p(x);
      EXPECT_NEAR(q(pt({t})), direct, 1e-9 * std::max(1.0, std::abs(direct)));
    }
  }
}

TEST(RandomPolynomial, Deterministic) {
  EXPECT_EQ(random_polynomial(3, 4, 77), random_polynomial(3, 4, 77));
  EXPECT_NE(random_polynomial(3, 4, 77), random_polynomial(3, 4, 78));
  EXPECT_EQ(random_polynomial(2, 3, 9, CoefficientLaw::spiked), random_polynomial(2, 3, 9, CoefficientLaw::spiked));
}

TEST(RandomPolynomial, DegreeZeroIsConstant) {
  const auto p = random_polynomial(4, 0, 3);
  EXPECT_EQ(p.degree(), 0u);
  EXPECT_LE(p.terms().size(), 1u);
}

TEST(RandomPolynomial, DenseTermCount) {
  EXPECT_EQ(monomials_up_to(2, 3).size(), 10u);
  EXPECT_EQ(random_polynomial(2, 3, 5).terms().size(), 10u);
  EXPECT_EQ(monomials_up_to(4, 4).size(), 70u);
}

TEST(RandomPolynomial, UniformLawStaysInRange) {
  const auto p = random_polynomial(3, 3, 8, CoefficientLaw::uniform);
  for (const auto& [e, c] : p.terms()) EXPECT_LE(std::abs(c), 1.0);
}

TEST(PolynomialText, RoundTrip) {
  const auto p = random_polynomial(3, 3, 12);
  EXPECT_EQ(polynomial_from_text(to_text(p), 3), p);
}

TEST(PolynomialText, CommentsAndErrors) {
  const auto p = polynomial_from_text("# t^2 - 1\n1 2\n\n-1 0\n", 1);
  EXPECT_DOUBLE_EQ(p(pt({3.0})), 8.0);
  EXPECT_THROW(polynomial_from_text("1 2 3\n", 1), std::invalid_argument);
  EXPECT_THROW(polynomial_from_text("abc 1\n", 1), std::invalid_argument);
}

TEST(Univariate, RealRootsOfChebyshev) {
  const auto c = chebyshev_t3().univariate_coefficients();
  const auto roots = univariate::real_roots(c, -1.0, 1.0);
  ASSERT_EQ(roots.size(), 3u);
  EXPECT_NEAR(roots[0], -std::sqrt(3.0) / 2.0, 1e-13);
  EXPECT_NEAR(roots[1], 0.0, 1e-13);
  EXPECT_NEAR(roots[2], std::sqrt(3.0) / 2.0, 1e-13);
}

TEST(Univariate, RootsOnHalfLine) {
  const double c[] = {-6.0, 11.0, -6.0, 1.0};  // (t-1)(t-2)(t-3)
  const auto roots = univariate::real_roots(c, 0.0, std::numeric_limits<double>::infinity());
  ASSERT_EQ(roots.size(), 3u);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(roots[i], i + 1.0, 1e-12);
}

TEST(Stream, CounterBasedAndDeterministic) {
  Stream a(1, 2, 3), b(1, 2, 3), c(1, 2, 4);
  for (int i = 0; i < 100; ++i) {
    const auto x = a();
    EXPECT_EQ(x, b());
    EXPECT_NE(x, c());
  }
  Stream u(9);
  for (int i = 0; i < 10000; ++i) {
    const double v = u.uniform();
    EXPECT_GE(v, 0.0);
    EXPECT_LT(v, 1.0);
    EXPECT_LT(u.below(7), 7u);
  }
}

TEST(Stream, NormalMoments) {
  Stream s(42);
  const int m = 200000;
  double sum = 0, sq = 0;
  for (int i = 0; i < m; ++i) {
    const double z = s.normal();
    sum += z;
    sq += z * z;
  }
  EXPECT_NEAR(sum / m, 0.0, 5.0 / std::sqrt(m));
  EXPECT_NEAR(sq / m, 1.0, 5.0 * std::sqrt(2.0 / m));
}
