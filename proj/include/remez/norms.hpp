#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "remez/measures.hpp"
#include "remez/polynomial.hpp"

namespace remez {

/// p outside (-1/d, 0) U [0, inf).
class InadmissibleExponent : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Sampling produced nothing usable (all-zero integrand at p <= 0, ...).
class EstimationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The set A has measure zero, or no sample landed in it.
class EmptyRestriction : public EstimationError {
 public:
  using EstimationError::EstimationError;
};

enum class EstimateMode { exact, monte_carlo };

struct NormEstimate {
  double value = 0.0;
  double radius = 0.0;  // half-width of the confidence interval
  EstimateMode mode = EstimateMode::monte_carlo;
  std::size_t samples = 0;
  double p = 0.0;
  std::size_t zeros_excluded = 0;  // p = 0 only
  bool unreliable = false;

  double lower() const noexcept { return value - radius; }
  double upper() const noexcept { return value + radius; }
};

struct ProbabilityEstimate {
  double value = 0.0;
  double radius = 0.0;
  EstimateMode mode = EstimateMode::monte_carlo;
  std::size_t samples = 0;

  double lower() const noexcept { return value - radius < 0.0 ? 0.0 : value - radius; }
  double upper() const noexcept { return value + radius > 1.0 ? 1.0 : value + radius; }
};

/// x -> |f(x)| for scalar polynomials, ||f(x)|| for maps, |f(x)| for
/// trigonometric polynomials.
class ScalarField {
 public:
  explicit ScalarField(Polynomial f) : f_(std::move(f)) {}
  explicit ScalarField(PolynomialMap f) : f_(std::move(f)) {}
  explicit ScalarField(TrigPolynomial f) : f_(std::move(f)) {}

  double operator()(std::span<const double> x) const;
  std::vector<double> evaluate(const PointSet& points) const;

  unsigned degree() const noexcept;
  std::size_t dimension() const noexcept;
  bool is_identically_zero() const noexcept;
  /// Non-null for a scalar polynomial of one variable.
  const Polynomial* univariate() const noexcept;
  ScalarField scaled(double alpha) const;

 private:
  std::variant<Polynomial, PolynomialMap, TrigPolynomial> f_;
};

struct Budget {
  std::size_t samples = 100000;
  double quadrature_tol = 1e-10;
  /// Use exact quadrature when the measure and field allow it.
  bool allow_exact = true;
  double confidence = 0.99;
  /// Number of estimates sharing the confidence level (Bonferroni).
  std::size_t family_size = 1;
};

/// Two-sided normal quantile for the given confidence split across
/// family_size simultaneous estimates.
double z_value(double confidence, std::size_t family_size = 1);

/// Sample kurtosis above which a negative-p estimate is flagged.
inline constexpr double kKurtosisFlag = 50.0;
/// Fraction of exact zeros above which an L^0 estimate is flagged.
inline constexpr double kZeroFractionFlag = 1e-3;

/// Throws InadmissibleExponent unless p > -1/degree (any p for degree 0).
void check_exponent(double p, unsigned degree);

NormEstimate lp_norm(const ScalarField& f, const MeasureSpec& mu, double p, const Budget& budget,
                     std::uint64_t seed);
NormEstimate restricted_lp_norm(const ScalarField& f, const MeasureSpec& mu, const SetSpec& A, double p,
                                const Budget& budget, std::uint64_t seed);
/// mu(|f| <= t).
ProbabilityEstimate levelset_measure(const ScalarField& f, const MeasureSpec& mu, double t,
                                     const Budget& budget, std::uint64_t seed);
ProbabilityEstimate set_measure(const MeasureSpec& mu, const SetSpec& A, const Budget& budget,
                                std::uint64_t seed);

/// L^p mean of non-negative sample values with a delta-method radius.
/// p = 0 gives the geometric mean; exact zeros are excluded and counted.
NormEstimate lp_from_values(std::span<const double> values, double p, double z);
/// Fraction hits/total with a Wilson-score radius.
ProbabilityEstimate binomial_estimate(std::size_t hits, std::size_t total, double z);
/// Level-set fractions for every threshold from one shared sample, so the
/// curve is non-decreasing in t.
std::vector<ProbabilityEstimate> levelset_curve(std::span<const double> values,
                                                std::span<const double> thresholds, double z);

/// Exact L^p norm of a one-variable polynomial under mu conditioned on region.
NormEstimate exact_lp_norm(const Polynomial& f, const MeasureSpec& mu, double p, const IntervalSet& region,
                           double tol = 1e-10);
/// Exact {|f| <= t} within the support of mu.
IntervalSet levelset_intervals(const Polynomial& f, const MeasureSpec& mu, double t);

}  // namespace remez
