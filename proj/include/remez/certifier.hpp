#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "remez/measures.hpp"
#include "remez/norms.hpp"
#include "remez/polynomial.hpp"

namespace remez {

enum class Verdict { holds, holds_within_noise, violated, inconclusive };
std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

/// Direction of the checked inequality: lhs >= rhs or lhs <= rhs.
enum class Relation { at_least, at_most };
std::string to_string(Relation r);
Relation relation_from_string(const std::string& s);

struct Estimate {
  double value = 0.0;
  double radius = 0.0;

  double lower() const noexcept { return value - radius; }
  double upper() const noexcept { return value + radius; }
  friend bool operator==(const Estimate&, const Estimate&) = default;
};

/// One checked instance of an inequality.
///
/// margin is oriented so that a positive value means the inequality holds
/// at the point estimates: lhs - rhs for at_least, rhs - lhs for at_most.
/// reference carries the auxiliary norm each suite needs to re-derive its
/// implied constant: ||f||_p for the integral and level-set suites, sup_A
/// for the classical suites.
struct InequalityReport {
  std::string suite;
  std::string key;
  std::string measure;
  std::string set;
  std::size_t n = 0;
  unsigned d = 0;
  double p = 0.0;
  double t = 0.0;
  std::size_t index = 0;
  std::uint64_t poly_seed = 0;
  std::uint64_t sample_seed = 0;
  std::string lhs_mode = "monte_carlo";

  Relation relation = Relation::at_least;
  Estimate mu_a;
  Estimate lhs;
  Estimate rhs;
  Estimate reference;
  double factor = 0.0;
  double branch_low = 0.0;
  double branch_high = 0.0;
  double margin = 0.0;
  Verdict verdict = Verdict::inconclusive;
  double implied_c = 0.0;
  bool flagged = false;
  double wall_time = 0.0;

  friend bool operator==(const InequalityReport&, const InequalityReport&) = default;
};

/// Confidence-interval separation; never a bare point comparison.
Verdict judge(Relation relation, const Estimate& lhs, const Estimate& rhs, bool flagged = false);

/// Smallest c for which the integral inequality holds with the given norms.
double implied_theorem1_constant(double p, unsigned d, double muA, double full_norm, double restricted_norm);

/// Assembles an integral-inequality report from the three estimates of one instance.
/// mu(A) enters at the conservative end of its interval.
InequalityReport theorem1_report(const NormEstimate& full, const NormEstimate& restricted,
                                 const ProbabilityEstimate& mu_a, double p, unsigned d, double c);

/// ||f||_p <= mu(A)^{1/p} ||f||_{p,A} for p < 0.
InequalityReport negative_p_report(const NormEstimate& full, const NormEstimate& restricted,
                                   const ProbabilityEstimate& mu_a, double p, unsigned d);

/// mu(|f| <= t) <= cw bound at ||f||_p.
InequalityReport cw_report(const ProbabilityEstimate& level, const NormEstimate& full, double t, double p,
                           unsigned d, double c);

/// Checks a single instance, using exact 1-D quadrature when available and
/// otherwise one shared sample stream for all three estimates.
InequalityReport certify_theorem1(const ScalarField& f, const MeasureSpec& mu, const SetSpec& A, double p,
                                  double c, const Budget& budget, std::uint64_t seed);
InequalityReport certify_cw(const ScalarField& f, const MeasureSpec& mu, double t, double p, double c,
                            const Budget& budget, std::uint64_t seed);

struct SuiteConfig {
  std::vector<MeasureKind> bodies{MeasureKind::uniform_box, MeasureKind::uniform_ball,
                                  MeasureKind::uniform_simplex};
  std::vector<std::size_t> dims{1, 2, 3, 4};
  std::vector<unsigned> degrees{1, 2, 3, 4};
  std::vector<double> exponents{0.5, 1.0, 2.0};
  std::vector<double> halfspace_quantiles{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  std::vector<double> sublevel_quantiles{0.25, 0.5, 0.75};
  /// Replaces bodies x dims with one explicit measure.
  std::optional<MeasureSpec> measure;
  std::size_t instances = 25;
  std::size_t samples = 100000;
  std::size_t pilot = 2000;
  std::size_t thresholds = 8;
  CoefficientLaw law = CoefficientLaw::standard_normal;
  std::uint64_t seed = 1;
  double c = 4.0;
  double confidence = 0.99;
  bool fixed_clock = false;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct SuiteResult {
  std::vector<InequalityReport> reports;  // sorted by key
  std::vector<std::string> skipped;       // instance key and reason
};

SuiteResult run_theorem1_suite(const SuiteConfig& config);
SuiteResult run_cw_suite(const SuiteConfig& config);

struct CalibratedRun {
  SuiteResult result;
  double fitted_c = 0.0;
  double c_used = 0.0;
  bool rerun = false;
};
/// Runs at config.c; if the fitted constant exceeds it, re-runs at 2 * fitted.
CalibratedRun run_theorem1_calibrated(const SuiteConfig& config);

struct ClassicalConfig {
  std::size_t scalar_instances = 500;
  std::size_t vector_instances = 200;
  std::size_t trig_instances = 100;
  unsigned max_degree = 6;
  std::size_t max_components = 3;
  unsigned trig_max_degree = 4;
  std::size_t trig_dimension = 2;
  double min_fraction = 0.2;
  std::size_t max_pieces = 3;
  double R = 4.0;
  double trig_R = 316.0;
  std::uint64_t seed = 1;
  bool fixed_clock = false;
};

struct GridSup {
  double value = 0.0;
  double argmax = 0.0;
  bool converged = false;
};
/// Supremum of g over an interval set by a refined grid with local polishing.
GridSup grid_sup(const std::function<double(double)>& g, const IntervalSet& where);

/// sup_delta ||f|| <= (R / lambda(A))^d sup_A ||f|| for one 1-D instance.
InequalityReport classical_report(const std::function<double(double)>& g, unsigned d, const Interval& delta,
                                  const IntervalSet& A, double R);

SuiteResult run_classical_suite(const ClassicalConfig& config);

struct TightnessResult {
  unsigned d = 0;
  double eps = 0.0;
  double full_norm = 0.0;            // integral of t^d e^{-t} over [0, inf)
  double factorial = 0.0;            // d!
  double factorial_lower = 0.0;      // (d/e)^d
  double restricted_integral = 0.0;  // integral over [0, eps]
  double upper_bound = 0.0;          // eps^{d+1} / (d+1)
  double mu_a = 0.0;                 // 1 - e^{-eps}
  double restricted_norm = 0.0;      // ||t^d||_{1,[0,eps]}
  double achieved_ratio = 0.0;       // restricted_norm / full_norm
  double mass_ratio = 0.0;           // restricted_integral / d!
  double predicted_factor = 0.0;     // integral-inequality factor at p = 1
  bool invariants_hold = false;

  friend bool operator==(const TightnessResult&, const TightnessResult&) = default;
};

TightnessResult tightness_exponential(unsigned d, double eps, double c = 4.0, double tol = 1e-12);

/// Max over instances of the implied constant, computed at the conservative
/// ends of each instance's confidence intervals. Only integral-inequality
/// reports with p > 0 take part.
double fit_empirical_constant(const std::vector<InequalityReport>& reports);

enum class ExtremalFamily { dense, monomial };

struct ExtremalConfig {
  MeasureSpec measure = MeasureSpec::box(1);
  unsigned d = 2;
  double p = 1.0;
  ExtremalFamily family = ExtremalFamily::dense;
  /// Dense family: A is the halfspace cut holding this fraction of samples.
  double set_fraction = 0.2;
  /// Monomial family: A = [0, eps].
  double eps = 0.5;
  std::size_t iterations = 200;
  std::size_t restarts = 3;
  std::size_t samples = 20000;
  double step = 0.5;
  double decay = 0.97;
  std::uint64_t seed = 1;
};

struct ExtremalResult {
  Polynomial best{1};
  SetSpec set = SetSpec::whole();
  double ratio = 1.0;  // ||f||_p / ||f||_{p,A}
  double mu_a = 1.0;
  double implied_c = 0.0;
  std::vector<double> trace;  // best-so-far, non-decreasing
  unsigned best_monomial_degree = 0;
};

ExtremalResult search_extremal(const ExtremalConfig& config);

}  // namespace remez
