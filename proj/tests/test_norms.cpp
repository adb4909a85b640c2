#include <gtest/gtest.h>

#include <cmath>

#include "remez/norms.hpp"

using namespace remez;

namespace {

ScalarField poly(std::initializer_list<double> c) {
  const std::vector<double> v(c);
  return ScalarField(Polynomial::univariate(v));
}

Budget exact_budget() { return Budget{}; }

Budget mc_budget(std::size_t samples = 100000) {
  Budget b;
  b.allow_exact = false;
  b.samples = samples;
  return b;
}

double combined(const NormEstimate& a, const NormEstimate& b) { return a.radius + b.radius; }

}  // namespace

TEST(LpNorm, ConstantFunction) {
  const auto five = ScalarField(Polynomial::constant(2, 5.0));
  for (double p : {-0.5, 0.0, 0.5, 1.0, 3.0}) {
    const auto e = lp_norm(five, MeasureSpec::ball(2), p, mc_budget(2000), 1);
    EXPECT_NEAR(e.value, 5.0, 1e-12) << "p=" << p;
  }
  const auto e = lp_norm(ScalarField(Polynomial::constant(1, 5.0)), MeasureSpec::interval(0, 1), 2.0, exact_budget(), 1);
  EXPECT_EQ(e.mode, EstimateMode::exact);
  EXPECT_NEAR(e.value, 5.0, 1e-12);
}

TEST(LpNorm, ExactPathOracles) {
  const auto t = poly({0, 1});
  const auto u = MeasureSpec::interval(0, 1);
  auto e = lp_norm(t, u, 1.0, exact_budget(), 1);
  EXPECT_EQ(e.mode, EstimateMode::exact);
  EXPECT_EQ(e.radius, 0.0);
  EXPECT_NEAR(e.value, 0.5, 1e-12);
  EXPECT_NEAR(lp_norm(poly({0, 0, 0, 1}), MeasureSpec::exponential(), 1.0, exact_budget(), 1).value, 6.0, 6e-10);
  EXPECT_NEAR(lp_norm(t, u, 0.0, exact_budget(), 1).value, std::exp(-1.0), 1e-10);
  EXPECT_NEAR(lp_norm(t, u, 2.0, exact_budget(), 1).value, std::sqrt(1.0 / 3.0), 1e-12);
}

TEST(LpNorm, NegativeExponentExact) {
  // ||t||_{-1/2} on U[0,1]: (int t^{-1/2})^{-2} = 1/4
  EXPECT_NEAR(lp_norm(poly({0, 1}), MeasureSpec::interval(0, 1), -0.5, exact_budget(), 1).value, 0.25, 1e-8);
}

TEST(LpNorm, RejectsInadmissibleExponent) {
  const auto t2 = poly({0, 0, 1});
  EXPECT_THROW(lp_norm(t2, MeasureSpec::interval(0, 1), -0.5, exact_budget(), 1), InadmissibleExponent);
  EXPECT_THROW(lp_norm(t2, MeasureSpec::interval(0, 1), -0.7, mc_budget(100), 1), InadmissibleExponent);
  EXPECT_NO_THROW(lp_norm(t2, MeasureSpec::interval(0, 1), -0.4, mc_budget(100), 1));
}

TEST(LpNorm, ZeroFunctionAtNonPositiveExponent) {
  const auto zero = ScalarField(Polynomial(1));
  EXPECT_THROW(lp_norm(zero, MeasureSpec::interval(0, 1), 0.0, mc_budget(100), 1), EstimationError);
  EXPECT_THROW(lp_norm(zero, MeasureSpec::interval(0, 1), -0.5, mc_budget(100), 1), EstimationError);
  EXPECT_EQ(lp_norm(zero, MeasureSpec::interval(0, 1), 1.0, mc_budget(100), 1).value, 0.0);
}

TEST(LpNorm, MonteCarloMatchesExact) {
  struct Case {
    ScalarField f;
    MeasureSpec mu;
    double p;
  };
  const std::vector<Case> cases = {
      {poly({0, 1}), MeasureSpec::interval(0, 1), 1.0},   {poly({0, 1}), MeasureSpec::interval(0, 1), 0.0},
      {poly({0, 0, 0, 1}), MeasureSpec::exponential(), 1.0}, {poly({1, -2, 1}), MeasureSpec::interval(-1, 2), 0.5},
      {poly({0, -3, 0, 4}), MeasureSpec::interval(-1, 1), 2.0}, {poly({0.5, 1}), MeasureSpec::interval(-1, 1), -0.5},
  };
  for (const auto& c : cases) {
    const auto ex = lp_norm(c.f, c.mu, c.p, exact_budget(), 3);
    const auto mc = lp_norm(c.f, c.mu, c.p, mc_budget(), 3);
    ASSERT_EQ(ex.mode, EstimateMode::exact);
    ASSERT_EQ(mc.mode, EstimateMode::monte_carlo);
    EXPECT_NEAR(mc.value, ex.value, 4.0 * mc.radius) << c.mu.describe() << " p=" << c.p;
  }
}

TEST(LpNorm, MonotoneInExponent) {
  const auto f = ScalarField(random_polynomial(2, 3, 5));
  const unsigned d = f.degree();
  const std::vector<double> grid{-1.0 / (2.0 * d), 0.0, 0.5, 1.0, 2.0, 4.0};
  for (const auto& mu : {MeasureSpec::box(2), MeasureSpec::ball(2), MeasureSpec::simplex(2)}) {
    std::vector<NormEstimate> e;
    for (double p : grid) e.push_back(lp_norm(f, mu, p, mc_budget(), 8));
    for (std::size_t i = 0; i + 1 < e.size(); ++i)
      EXPECT_LE(e[i].value, e[i + 1].value + combined(e[i], e[i + 1])) << mu.describe() << " i=" << i;
  }
}

TEST(LpNorm, HomogeneousUnderScaling) {
  const auto base = random_polynomial(3, 2, 4);
  for (double alpha : {-3.0, 0.25, 7.0}) {
    for (double p : {-0.2, 0.0, 1.0, 2.5}) {
      const auto a = lp_norm(ScalarField(base), MeasureSpec::box(3), p, mc_budget(20000), 2);
      const auto b = lp_norm(ScalarField(base.scaled(alpha)), MeasureSpec::box(3), p, mc_budget(20000), 2);
      EXPECT_NEAR(b.value, std::abs(alpha) * a.value, 1e-12 * std::abs(alpha) * a.value);
    }
  }
}

TEST(LpNorm, ZeroExponentIsLimit) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto f = ScalarField(random_polynomial(2, 2, seed));
    const auto a = lp_norm(f, MeasureSpec::box(2), 0.01, mc_budget(), 11);
    const auto b = lp_norm(f, MeasureSpec::box(2), 0.0, mc_budget(), 11);
    EXPECT_LE(std::abs(a.value - b.value), 0.02 * b.value + combined(a, b));
  }
}

TEST(LpFromValues, ZerosAreExcludedAndFlagged) {
  std::vector<double> v(1000, 2.0);
  v[0] = 0.0;
  auto e = lp_from_values(v, 0.0, 2.5);
  EXPECT_EQ(e.zeros_excluded, 1u);
  EXPECT_NEAR(e.value, 2.0, 1e-13);
  EXPECT_FALSE(e.unreliable);  // exactly 0.1%
  v[1] = 0.0;
  e = lp_from_values(v, 0.0, 2.5);
  EXPECT_EQ(e.zeros_excluded, 2u);
  EXPECT_TRUE(e.unreliable);
}

TEST(LpFromValues, HeavyTailFlagged) {
  std::vector<double> v(10000, 1.0);
  v[0] = 1e-12;
  EXPECT_TRUE(lp_from_values(v, -0.4, 2.5).unreliable);
  EXPECT_FALSE(lp_from_values(std::vector<double>(100, 1.0), -0.4, 2.5).unreliable);
}

TEST(RestrictedLpNorm, WholeSpaceMatchesFullNorm) {
  const auto f = ScalarField(random_polynomial(2, 3, 9));
  const auto mu = MeasureSpec::ball(2);
  const auto a = lp_norm(f, mu, 1.0, mc_budget(), 5);
  const auto b = restricted_lp_norm(f, mu, SetSpec::whole(), 1.0, mc_budget(), 5);
  EXPECT_NEAR(a.value, b.value, combined(a, b));
}

TEST(RestrictedLpNorm, ExactUpperHalf) {
  const auto e = restricted_lp_norm(poly({0, 1}), MeasureSpec::interval(0, 1), SetSpec::intervals({{0.5, 1.0}}), 1.0,
                                    exact_budget(), 1);
  EXPECT_EQ(e.mode, EstimateMode::exact);
  EXPECT_NEAR(e.value, 0.75, 1e-12);
}

TEST(RestrictedLpNorm, MonteCarloUpperHalf) {
  const auto e = restricted_lp_norm(poly({0, 1}), MeasureSpec::interval(0, 1), SetSpec::intervals({{0.5, 1.0}}), 1.0,
                                    mc_budget(), 1);
  EXPECT_NEAR(e.value, 0.75, 4.0 * e.radius);
}

TEST(RestrictedLpNorm, EmptySetSignalled) {
  const auto f = poly({0, 1});
  EXPECT_THROW(restricted_lp_norm(f, MeasureSpec::interval(0, 1), SetSpec::intervals({{2.0, 3.0}}), 1.0, exact_budget(), 1),
               EmptyRestriction);
  EXPECT_THROW(restricted_lp_norm(f, MeasureSpec::interval(0, 1), SetSpec::intervals({{0.5, 0.5 + 1e-12}}), 1.0,
                                  mc_budget(1000), 1),
               EmptyRestriction);
  EXPECT_THROW(restricted_lp_norm(ScalarField(random_polynomial(2, 2, 1)), MeasureSpec::box(2),
                                  SetSpec::halfspace({1.0, 0.0}, -5.0), 1.0, mc_budget(1000), 1),
               EmptyRestriction);
}

TEST(LevelsetMeasure, Oracles) {
  const auto t2 = poly({0, 0, 1});
  const auto mu = MeasureSpec::interval(-1, 1);
  const auto e = levelset_measure(t2, mu, 0.25, exact_budget(), 1);
  EXPECT_EQ(e.mode, EstimateMode::exact);
  EXPECT_NEAR(e.value, 0.5, 1e-14);
  EXPECT_NEAR(levelset_measure(t2, mu, 1.0, exact_budget(), 1).value, 1.0, 1e-15);
  EXPECT_NEAR(levelset_measure(t2, mu, 0.0, exact_budget(), 1).value, 0.0, 1e-15);
  EXPECT_EQ(levelset_measure(t2, mu, 0.0, mc_budget(10000), 1).value, 0.0);
  EXPECT_EQ(levelset_measure(t2, mu, 5.0, mc_budget(10000), 1).value, 1.0);
  const auto mc = levelset_measure(t2, mu, 0.25, mc_budget(), 1);
  EXPECT_NEAR(mc.value, 0.5, 4.0 * mc.radius);
}

TEST(LevelsetMeasure, ExponentialExact) {
  // mu(t <= 1) under e^{-t}
  EXPECT_NEAR(levelset_measure(poly({0, 1}), MeasureSpec::exponential(), 1.0, exact_budget(), 1).value,
              1.0 - std::exp(-1.0), 1e-15);
}

TEST(LevelsetCurve, MonotoneWithSharedSamples) {
  const auto f = ScalarField(random_polynomial(3, 3, 2));
  const auto pts = draw(MeasureSpec::ball(3), 20000, 4);
  const auto v = f.evaluate(pts);
  std::vector<double> t;
  for (int i = 0; i <= 40; ++i) t.push_back(0.05 * i);
  const auto curve = levelset_curve(v, t, 2.58);
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) EXPECT_LE(curve[i].value, curve[i + 1].value);
}

TEST(LevelsetMeasure, ExactPathMonotone) {
  const auto f = poly({0.2, -1.5, 0.0, 2.0});
  double prev = 0.0;
  for (int i = 0; i <= 50; ++i) {
    const double v = levelset_measure(f, MeasureSpec::interval(-1, 1), 0.05 * i, exact_budget(), 1).value;
    EXPECT_GE(v, prev);
    prev = v;
  }
}

TEST(SetMeasure, Oracles) {
  EXPECT_EQ(set_measure(MeasureSpec::ball(3), SetSpec::whole(), mc_budget(1000), 1).value, 1.0);
  const auto e = set_measure(MeasureSpec::interval(0, 1), SetSpec::intervals({{0.0, 0.3}}), exact_budget(), 1);
  EXPECT_EQ(e.mode, EstimateMode::exact);
  EXPECT_DOUBLE_EQ(e.value, 0.3);
  for (const auto& mu : {MeasureSpec::ball(3), MeasureSpec::box(3)}) {
    const auto h = set_measure(mu, SetSpec::halfspace({0.3, -1.0, 2.0}, 0.0), mc_budget(), 6);
    EXPECT_NEAR(h.value, 0.5, h.radius);
  }
}

TEST(BinomialEstimate, WilsonIntervalStaysInUnitRange) {
  const auto zero = binomial_estimate(0, 100, 2.58);
  EXPECT_EQ(zero.value, 0.0);
  EXPECT_GT(zero.radius, 0.0);
  EXPECT_EQ(zero.lower(), 0.0);
  const auto all = binomial_estimate(100, 100, 2.58);
  EXPECT_EQ(all.upper(), 1.0);
}

TEST(ZValue, BonferroniWidens) {
  EXPECT_NEAR(z_value(0.99, 1), 2.5758293035489, 1e-9);
  EXPECT_GT(z_value(0.99, 3), z_value(0.99, 1));
  EXPECT_NEAR(z_value(0.95, 1), 1.959963984540, 1e-9);
}
