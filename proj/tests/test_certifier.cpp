#include <gtest/gtest.h>

#include <cmath>

#include "remez/bounds.hpp"
#include "remez/certifier.hpp"

using namespace remez;

namespace {

ScalarField poly(std::initializer_list<double> c) {
  const std::vector<double> v(c);
  return ScalarField(Polynomial::univariate(v));
}

SuiteConfig small_suite() {
  SuiteConfig cfg;
  cfg.dims = {1, 2};
  cfg.degrees = {1, 3};
  cfg.instances = 3;
  cfg.samples = 5000;
  cfg.pilot = 500;
  cfg.seed = 21;
  cfg.fixed_clock = true;
  return cfg;
}

}  // namespace

TEST(Judge, SeparationRules) {
  EXPECT_EQ(judge(Relation::at_least, {2.0, 0.1}, {1.0, 0.1}), Verdict::holds);
  EXPECT_EQ(judge(Relation::at_least, {1.0, 0.1}, {2.0, 0.1}), Verdict::violated);
  EXPECT_EQ(judge(Relation::at_least, {1.05, 0.1}, {1.0, 0.1}), Verdict::holds_within_noise);
  EXPECT_EQ(judge(Relation::at_least, {0.95, 0.1}, {1.0, 0.1}), Verdict::inconclusive);
  EXPECT_EQ(judge(Relation::at_most, {1.0, 0.1}, {2.0, 0.1}), Verdict::holds);
  EXPECT_EQ(judge(Relation::at_most, {2.0, 0.1}, {1.0, 0.1}), Verdict::violated);
  EXPECT_EQ(judge(Relation::at_most, {1.0, 0.0}, {1.0, 0.0}), Verdict::holds);
  // A flagged estimate never yields a violation.
  EXPECT_EQ(judge(Relation::at_least, {1.0, 0.1}, {2.0, 0.1}, true), Verdict::inconclusive);
}

TEST(Judge, ViolationNeedsSignificance) {
  // Overlapping intervals with the point estimate on the wrong side.
  EXPECT_NE(judge(Relation::at_least, {1.0, 0.3}, {1.4, 0.2}), Verdict::violated);
  EXPECT_EQ(judge(Relation::at_least, {1.0, 0.1}, {1.4, 0.2}), Verdict::violated);
}

TEST(CertifyTheorem1, ExactUnitIntervalInstance) {
  const auto r = certify_theorem1(poly({0, 1}), MeasureSpec::interval(0, 1), SetSpec::intervals({{0.5, 1.0}}), 1.0, 4.0,
                                  Budget{}, 1);
  EXPECT_EQ(r.lhs_mode, "exact");
  EXPECT_NEAR(r.lhs.value, 0.75, 1e-12);
  EXPECT_NEAR(r.mu_a.value, 0.5, 1e-15);
  EXPECT_NEAR(r.rhs.value, 0.03125, 1e-12);
  EXPECT_NEAR(r.rhs.radius, 0.0, 1e-12);
  EXPECT_EQ(r.verdict, Verdict::holds);
  EXPECT_NEAR(r.margin, 0.75 - 0.03125, 1e-12);
  EXPECT_NEAR(r.implied_c, 1.0 / 6.0, 1e-12);
}

TEST(CertifyTheorem1, ConstantPolynomial) {
  const auto one = ScalarField(Polynomial::constant(2, 1.0));
  const auto r = certify_theorem1(one, MeasureSpec::box(2), SetSpec::halfspace({1.0, 1.0}, 0.0), 2.0, 4.0, Budget{}, 3);
  EXPECT_DOUBLE_EQ(r.lhs.value, 1.0);
  EXPECT_DOUBLE_EQ(r.reference.value, 1.0);
  EXPECT_NEAR(r.rhs.value, r.factor, 1e-15);
  EXPECT_NEAR(r.margin, 1.0 - r.factor, 1e-15);
  EXPECT_EQ(r.verdict, Verdict::holds);
}

TEST(CertifyTheorem1, NegativeExponentUsesTrivialBound) {
  const auto r = certify_theorem1(poly({0.3, 1}), MeasureSpec::interval(-1, 1), SetSpec::intervals({{0.0, 1.0}}), -0.25, 4.0,
                                  Budget{}, 1);
  EXPECT_EQ(r.suite, "negative_p");
  EXPECT_EQ(r.relation, Relation::at_most);
  EXPECT_NEAR(r.factor, std::pow(0.5, -4.0), 1e-12);
  EXPECT_NE(r.verdict, Verdict::violated);
}

TEST(ImpliedConstant, ConstantFunctionClosedForm) {
  for (double p : {0.1, 0.3}) {
    for (unsigned d : {1u, 2u}) {
      if (p * d >= 1.0) continue;
      const double mu = 0.37;
      EXPECT_NEAR(implied_theorem1_constant(p, d, mu, 2.0, 2.0), mu * std::pow(d * p + 1.0, -1.0 / (p * d)), 1e-14);
    }
  }
}

TEST(ImpliedConstant, InvertsTheFactor) {
  // At c = implied constant the bound is met with equality.
  for (double p : {0.2, 1.0, 2.5}) {
    for (unsigned d : {1u, 2u, 4u}) {
      const double mu = 0.3, full = 2.0, restricted = 0.7;
      const double c = implied_theorem1_constant(p, d, mu, full, restricted);
      EXPECT_NEAR(bounds::theorem1_factor(p, d, mu, c) * full, restricted, 1e-12 * restricted);
    }
  }
}

TEST(FitEmpiricalConstant, Aggregation) {
  const auto a = certify_theorem1(poly({0, 1}), MeasureSpec::interval(0, 1), SetSpec::intervals({{0.5, 1.0}}), 1.0, 4.0,
                                  Budget{}, 1);
  EXPECT_NEAR(fit_empirical_constant({a}), 1.0 / 6.0, 1e-12);
  const auto b = certify_theorem1(poly({0, 1}), MeasureSpec::interval(0, 1), SetSpec::intervals({{0.0, 0.5}}), 1.0, 4.0,
                                  Budget{}, 1);
  EXPECT_GT(b.implied_c, a.implied_c);
  EXPECT_NEAR(fit_empirical_constant({a, b}), std::max(a.implied_c, b.implied_c), 1e-15);
}

TEST(FitEmpiricalConstant, Errors) {
  EXPECT_THROW(fit_empirical_constant({}), std::invalid_argument);
  InequalityReport zero;
  zero.suite = "theorem1";
  zero.p = 1.0;
  zero.d = 1;
  zero.mu_a = {0.5, 0.0};
  zero.reference = {1.0, 0.0};
  EXPECT_THROW(fit_empirical_constant({zero}), std::invalid_argument);
}

TEST(CertifyCw, ExactUnitIntervalInstance) {
  const auto r = certify_cw(poly({0, 1}), MeasureSpec::interval(0, 1), 0.1, 1.0, 4.0, Budget{}, 1);
  EXPECT_NEAR(r.lhs.value, 0.1, 1e-15);
  EXPECT_NEAR(r.rhs.value, 0.8, 1e-12);
  EXPECT_EQ(r.verdict, Verdict::holds);
}

TEST(CertifyCw, ZeroAndLargeThresholds) {
  const auto zero = certify_cw(poly({0, 1}), MeasureSpec::interval(0, 1), 0.0, 1.0, 4.0, Budget{}, 1);
  EXPECT_EQ(zero.lhs.value, 0.0);
  EXPECT_EQ(zero.rhs.value, 0.0);
  EXPECT_EQ(zero.verdict, Verdict::holds);
  const auto big = certify_cw(ScalarField(random_polynomial(2, 3, 4)), MeasureSpec::ball(2), 1e9, 1.0, 4.0, Budget{}, 1);
  EXPECT_EQ(big.rhs.value, 1.0);
  EXPECT_NE(big.verdict, Verdict::violated);
}

TEST(Theorem1Suite, NoViolationsAndDeterministic) {
  const auto cfg = small_suite();
  const auto a = run_theorem1_suite(cfg);
  const auto b = run_theorem1_suite(cfg);
  EXPECT_EQ(a.reports, b.reports);
  // 3 bodies x 2 dims x 2 degrees x 3 instances x 3 exponents
  EXPECT_EQ(a.reports.size() + a.skipped.size(), 108u);
  for (const auto& r : a.reports) {
    EXPECT_NE(r.verdict, Verdict::violated) << r.key;
    EXPECT_GT(r.implied_c, 0.0) << r.key;
    EXPECT_EQ(r.wall_time, 0.0);
  }
  for (std::size_t i = 0; i + 1 < a.reports.size(); ++i) EXPECT_LT(a.reports[i].key, a.reports[i + 1].key);
}

TEST(Theorem1Suite, IndependentOfThreadCount) {
  auto cfg = small_suite();
  cfg.threads = 1;
  const auto one = run_theorem1_suite(cfg);
  cfg.threads = 4;
  EXPECT_EQ(run_theorem1_suite(cfg).reports, one.reports);
}

TEST(Theorem1Suite, NegativeExponentsAreRangeChecked) {
  auto cfg = small_suite();
  cfg.bodies = {MeasureKind::uniform_box};
  cfg.dims = {1};
  cfg.degrees = {1, 3};
  cfg.exponents = {-0.5};
  const auto res = run_theorem1_suite(cfg);
  for (const auto& r : res.reports) {
    EXPECT_EQ(r.suite, "negative_p");
    EXPECT_EQ(r.d, 1u);
  }
  EXPECT_EQ(res.reports.size(), 3u);
  EXPECT_FALSE(res.skipped.empty());
}

TEST(Theorem1Suite, EmptyGridRejected) {
  auto cfg = small_suite();
  cfg.degrees.clear();
  EXPECT_THROW(run_theorem1_suite(cfg), std::invalid_argument);
}

TEST(CalibratedRun, RerunsWhenConstantTooSmall) {
  auto cfg = small_suite();
  cfg.c = 1e-3;
  const auto run = run_theorem1_calibrated(cfg);
  EXPECT_TRUE(run.rerun);
  EXPECT_NEAR(run.c_used, 2.0 * run.fitted_c, 1e-12);
  for (const auto& r : run.result.reports) EXPECT_NE(r.verdict, Verdict::violated);
}

TEST(CwSuite, MonotoneCurvesAndNoViolations) {
  auto cfg = small_suite();
  cfg.exponents = {1.0};
  const auto res = run_cw_suite(cfg);
  EXPECT_EQ(res.reports.size(), 3u * 2 * 2 * 3 * 8);
  for (const auto& r : res.reports) EXPECT_NE(r.verdict, Verdict::violated) << r.key;
  for (std::size_t i = 0; i + 1 < res.reports.size(); ++i) {
    const auto& a = res.reports[i];
    const auto& b = res.reports[i + 1];
    if (a.key.substr(0, a.key.find("/t=")) != b.key.substr(0, b.key.find("/t="))) continue;
    EXPECT_LE(a.t, b.t);
    EXPECT_LE(a.lhs.value, b.lhs.value);
  }
}

TEST(GridSup, ChebyshevOnSubsets) {
  auto t3 = [](double t) { return std::abs(4 * t * t * t - 3 * t); };
  const auto whole = grid_sup(t3, IntervalSet({{-1.0, 1.0}}));
  EXPECT_TRUE(whole.converged);
  EXPECT_NEAR(whole.value, 1.0, 1e-12);
  const auto part = grid_sup(t3, IntervalSet({{-0.2, 0.3}}));
  EXPECT_NEAR(part.value, std::abs(4 * 0.027 - 0.9), 1e-12);
}

TEST(ClassicalReport, ChebyshevExamples) {
  auto t3 = [](double t) { return std::abs(4 * t * t * t - 3 * t); };
  const auto same = classical_report(t3, 3, {-1.0, 1.0}, IntervalSet({{-1.0, 1.0}}), 4.0);
  EXPECT_NEAR(same.lhs.value / same.reference.value, 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(same.factor, 64.0);
  EXPECT_EQ(same.verdict, Verdict::holds);
  const auto cut = classical_report(t3, 3, {-1.0, 1.0}, IntervalSet({{-1.0, 0.8}}), 4.0);
  EXPECT_NEAR(cut.mu_a.value, 0.9, 1e-15);
  EXPECT_LE(cut.lhs.value / cut.reference.value, 1.0 + 1e-12);
  EXPECT_NEAR(cut.factor, std::pow(4.0 / 0.9, 3), 1e-9);
  EXPECT_EQ(cut.verdict, Verdict::holds);
}

TEST(ClassicalReport, VectorMapSupNorm) {
  const double a[] = {0.0, 1.0}, b[] = {1.0, 0.0, -1.0};
  const PolynomialMap f({Polynomial::univariate(a), Polynomial::univariate(b)}, CodomainNorm::sup);
  const auto r = classical_report(
      [&](double t) {
        const double x[1] = {t};
        return eval_map_norm(f, x);
      },
      2, {-1.0, 1.0}, IntervalSet({{0.0, 1.0}}), 4.0);
  EXPECT_NEAR(r.lhs.value, 1.0, 1e-12);
  EXPECT_NEAR(r.reference.value, 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(r.factor, 64.0);
  EXPECT_EQ(r.verdict, Verdict::holds);
}

TEST(ClassicalSuite, AllHoldAndDeterministic) {
  ClassicalConfig cfg;
  cfg.scalar_instances = 60;
  cfg.vector_instances = 30;
  cfg.trig_instances = 20;
  cfg.fixed_clock = true;
  const auto a = run_classical_suite(cfg);
  EXPECT_EQ(a.reports.size(), 110u);
  for (const auto& r : a.reports) {
    EXPECT_EQ(r.verdict, Verdict::holds) << r.key;
    EXPECT_GE(r.mu_a.value, 0.2 - 1e-12);
  }
  EXPECT_EQ(run_classical_suite(cfg).reports, a.reports);
}

TEST(Tightness, DegreeThreeValues) {
  const auto t = tightness_exponential(3, 0.5);
  EXPECT_NEAR(t.full_norm, 6.0, 6e-12);
  EXPECT_DOUBLE_EQ(t.factorial, 6.0);
  EXPECT_NEAR(t.factorial_lower, 1.3443, 1e-4);
  EXPECT_DOUBLE_EQ(t.upper_bound, 0.015625);
  EXPECT_LE(t.restricted_integral, t.upper_bound);
  EXPECT_TRUE(t.invariants_hold);
  // 6 - e^{-1/2} (0.125 + 0.75 + 3 + 6)... lower incomplete gamma(4, 0.5)
  const double exact = 6.0 - std::exp(-0.5) * (0.125 + 3 * 0.25 + 6 * 0.5 + 6);
  EXPECT_NEAR(t.restricted_integral, exact, 1e-12 * exact + 1e-15);
  EXPECT_NEAR(t.mass_ratio, exact / 6.0, 1e-12);
  EXPECT_NEAR(t.predicted_factor, bounds::theorem1_factor(1.0, 3, 1.0 - std::exp(-0.5), 4.0), 1e-15);
}

TEST(Tightness, InvariantsAcrossGrid) {
  for (unsigned d = 1; d <= 10; ++d)
    for (double eps : {0.1, 0.5, 1.0}) EXPECT_TRUE(tightness_exponential(d, eps).invariants_hold) << d << " " << eps;
  EXPECT_THROW(tightness_exponential(0, 0.5), std::invalid_argument);
  EXPECT_THROW(tightness_exponential(2, 0.0), std::invalid_argument);
}

TEST(SearchExtremal, ConstantStartAndMonotoneTrace) {
  ExtremalConfig cfg;
  cfg.measure = MeasureSpec::box(2);
  cfg.iterations = 60;
  cfg.restarts = 2;
  cfg.samples = 4000;
  const auto r = search_extremal(cfg);
  ASSERT_FALSE(r.trace.empty());
  EXPECT_NEAR(r.trace.front(), 1.0, 1e-12);
  for (std::size_t i = 0; i + 1 < r.trace.size(); ++i) EXPECT_LE(r.trace[i], r.trace[i + 1]);
  EXPECT_GE(r.ratio, 1.0);
  EXPECT_GT(r.implied_c, 0.0);
  const auto again = search_extremal(cfg);
  EXPECT_EQ(again.trace, r.trace);
  EXPECT_EQ(again.best, r.best);
}

TEST(SearchExtremal, MonomialFamilySelectsTopDegree) {
  ExtremalConfig cfg;
  cfg.measure = MeasureSpec::exponential();
  cfg.family = ExtremalFamily::monomial;
  cfg.d = 4;
  cfg.eps = 0.5;
  const auto r = search_extremal(cfg);
  EXPECT_EQ(r.best_monomial_degree, 4u);
  ASSERT_EQ(r.trace.size(), 5u);
  EXPECT_NEAR(r.trace.front(), 1.0, 1e-12);
  for (std::size_t i = 0; i + 1 < r.trace.size(); ++i) EXPECT_LT(r.trace[i], r.trace[i + 1]);
  EXPECT_NEAR(r.mu_a, 1.0 - std::exp(-0.5), 1e-15);
}
