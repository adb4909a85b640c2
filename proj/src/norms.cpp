#include "remez/norms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include <boost/math/distributions/normal.hpp>

#include "remez/quadrature.hpp"

namespace remez {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool exact_path(const ScalarField& f, const MeasureSpec& mu, const Budget& budget) {
  return budget.allow_exact && mu.is_exact_1d() && f.univariate() != nullptr;
}

double density(const MeasureSpec& mu, double t) {
  if (mu.kind() == MeasureKind::exponential_halfline) return std::exp(-t);
  const auto [lo, hi] = mu.support_1d();
  return 1.0 / (hi - lo);
}

// Breakpoints of region split at the roots of f, one list per piece.
std::vector<std::vector<double>> knots_for(const std::vector<double>& coeffs, const IntervalSet& region) {
  std::vector<std::vector<double>> out;
  for (const auto& piece : region.pieces()) {
    std::vector<double> knots{piece.lo};
    for (double r : univariate::real_roots(coeffs, piece.lo, piece.hi))
      if (r > knots.back() && r < piece.hi) knots.push_back(r);
    if (piece.hi > knots.back()) knots.push_back(piece.hi);
    out.push_back(std::move(knots));
  }
  return out;
}

// Integral of g over [a, b] where g may blow up integrably at either end.
// Each half is mapped through t = end +- h u^k, which flattens |t - end|^q
// for q > -1 + 1/k. Evaluations that round onto the root carry no mass.
double integrate_graded(const std::function<double(double)>& g, double a, double b, unsigned k,
                        const QuadratureOptions& opt) {
  if (std::isinf(b)) return integrate_graded(g, a, a + 1.0, k, opt) + quadrature_1d(g, a + 1.0, b, opt);
  const double h = 0.5 * (b - a);
  const double kd = static_cast<double>(k);
  const auto side = [&](double end, double dir) {
    return [&, end, dir](double u) {
      const double v = g(end + dir * h * std::pow(u, kd)) * kd * h * std::pow(u, kd - 1.0);
      return std::isfinite(v) ? v : 0.0;
    };
  };
  return quadrature_1d(side(a, 1.0), 0.0, 1.0, opt) + quadrature_1d(side(b, -1.0), 0.0, 1.0, opt);
}

double integrate_knots(const std::function<double(double)>& g, const std::vector<double>& knots, unsigned k,
                       const QuadratureOptions& opt) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) sum += integrate_graded(g, knots[i], knots[i + 1], k, opt);
  return sum;
}

}  // namespace

double ScalarField::operator()(std::span<const double> x) const {
  return std::visit(Overloaded{
                        [&](const Polynomial& p) { return std::abs(p(x)); },
                        [&](const PolynomialMap& m) { return eval_map_norm(m, x); },
                        [&](const TrigPolynomial& t) { return eval_trig_modulus(t, x); },
                    },
                    f_);
}

std::vector<double> ScalarField::evaluate(const PointSet& points) const {
  if (points.dimension() != dimension())
    throw DimensionError("field of dimension " + std::to_string(dimension()) + " evaluated on points of dimension " +
                         std::to_string(points.dimension()));
  std::vector<double> out(points.size());
  if (const auto* p = std::get_if<Polynomial>(&f_)) {
    for (std::size_t i = 0; i < points.size(); ++i) out[i] = std::abs(p->evaluate_unchecked(points[i].data()));
  } else {
    for (std::size_t i = 0; i < points.size(); ++i) out[i] = (*this)(points[i]);
  }
  return out;
}

unsigned ScalarField::degree() const noexcept {
  return std::visit([](const auto& f) { return f.degree(); }, f_);
}

std::size_t ScalarField::dimension() const noexcept {
  return std::visit([](const auto& f) { return f.dimension(); }, f_);
}

bool ScalarField::is_identically_zero() const noexcept {
  return std::visit(Overloaded{
                        [](const Polynomial& p) { return p.is_zero(); },
                        [](const PolynomialMap& m) {
                          return std::all_of(m.components().begin(), m.components().end(),
                                             [](const Polynomial& c) { return c.is_zero(); });
                        },
                        [](const TrigPolynomial&) { return false; },
                    },
                    f_);
}

const Polynomial* ScalarField::univariate() const noexcept {
  const auto* p = std::get_if<Polynomial>(&f_);
  return p != nullptr && p->dimension() == 1 ? p : nullptr;
}

ScalarField ScalarField::scaled(double alpha) const {
  return std::visit(Overloaded{
                        [&](const Polynomial& p) { return ScalarField(p.scaled(alpha)); },
                        [&](const PolynomialMap& m) { return ScalarField(m.scaled(alpha)); },
                        [&](const TrigPolynomial&) -> ScalarField {
                          throw std::invalid_argument("trigonometric polynomials are not scaled");
                        },
                    },
                    f_);
}

double z_value(double confidence, std::size_t family_size) {
  if (!(confidence > 0.0 && confidence < 1.0)) throw std::invalid_argument("confidence must lie in (0, 1)");
  const double alpha = (1.0 - confidence) / static_cast<double>(std::max<std::size_t>(family_size, 1));
  return boost::math::quantile(boost::math::normal_distribution<double>(), 1.0 - 0.5 * alpha);
}

void check_exponent(double p, unsigned degree) {
  if (!std::isfinite(p)) throw InadmissibleExponent("exponent must be finite");
  if (p < 0.0 && degree > 0 && p * static_cast<double>(degree) <= -1.0) {
    std::ostringstream msg;
    msg << "exponent p=" << p << " is outside (-1/d, 0) U [0, inf) for d=" << degree;
    throw InadmissibleExponent(msg.str());
  }
}

NormEstimate lp_from_values(std::span<const double> values, double p, double z) {
  NormEstimate est;
  est.p = p;
  est.samples = values.size();
  if (values.empty()) throw EstimationError("lp estimate from an empty sample");

  if (p == 0.0) {
    double sum = 0.0, sum2 = 0.0;
    std::size_t used = 0;
    for (double v : values) {
      if (v == 0.0) {
        ++est.zeros_excluded;
        continue;
      }
      const double l = std::log(v);
      sum += l;
      sum2 += l * l;
      ++used;
    }
    if (used == 0) throw EstimationError("L^0 estimate: every sample is zero");
    const double mean = sum / static_cast<double>(used);
    const double var = used > 1 ? std::max(0.0, (sum2 - sum * mean) / static_cast<double>(used - 1)) : 0.0;
    est.value = std::exp(mean);
    est.radius = z * est.value * std::sqrt(var / static_cast<double>(used));
    est.unreliable = static_cast<double>(est.zeros_excluded) > kZeroFractionFlag * static_cast<double>(values.size());
    return est;
  }

  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) {
    if (p < 0.0 && v == 0.0) throw EstimationError("negative-p estimate hit an exact zero of f");
    sum += std::pow(v, p);
  }
  const double mean = sum / n;
  double m2 = 0.0, m4 = 0.0;
  for (double v : values) {
    const double d = std::pow(v, p) - mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  const double var = values.size() > 1 ? m2 / (n - 1.0) : 0.0;
  if (mean == 0.0) {
    est.value = 0.0;
    est.radius = 0.0;
    return est;
  }
  est.value = std::pow(mean, 1.0 / p);
  // d/dm m^{1/p} = m^{1/p - 1} / p
  est.radius = z * std::abs(est.value / (p * mean)) * std::sqrt(var / n);
  if (p < 0.0 && m2 > 0.0) {
    const double kurtosis = (m4 / n) / ((m2 / n) * (m2 / n));
    est.unreliable = kurtosis > kKurtosisFlag;
  }
  return est;
}

ProbabilityEstimate binomial_estimate(std::size_t hits, std::size_t total, double z) {
  if (total == 0) throw EstimationError("probability estimate from an empty sample");
  ProbabilityEstimate est;
  est.samples = total;
  const double n = static_cast<double>(total);
  const double phat = static_cast<double>(hits) / n;
  est.value = phat;
  const double z2 = z * z;
  const double centre = (phat + z2 / (2.0 * n)) / (1.0 + z2 / n);
  const double half = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / (1.0 + z2 / n);
  est.radius = std::max(centre + half - phat, phat - (centre - half));
  return est;
}

std::vector<ProbabilityEstimate> levelset_curve(std::span<const double> values, std::span<const double> thresholds,
                                                double z) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<ProbabilityEstimate> out;
  out.reserve(thresholds.size());
  for (double t : thresholds) {
    const auto hits = static_cast<std::size_t>(std::upper_bound(sorted.begin(), sorted.end(), t) - sorted.begin());
    out.push_back(binomial_estimate(hits, sorted.size(), z));
  }
  return out;
}

NormEstimate exact_lp_norm(const Polynomial& f, const MeasureSpec& mu, double p, const IntervalSet& region,
                           double tol) {
  check_exponent(p, f.degree());
  const double mass = interval_measure(mu, region);
  if (!(mass > 0.0)) throw EmptyRestriction("exact norm over a set of measure zero");
  const auto coeffs = f.univariate_coefficients();
  if (f.is_zero() && p <= 0.0) throw EstimationError("norm with p <= 0 of the zero polynomial");

  NormEstimate est;
  est.mode = EstimateMode::exact;
  est.p = p;
  if (f.is_zero()) return est;

  QuadratureOptions opt;
  opt.rel_tol = tol;
  opt.max_subdivisions = 20000;
  double integral = 0.0;
  if (p == 0.0) {
    const auto g = [&](double t) { return std::log(std::abs(univariate::evaluate(coeffs, t))) * density(mu, t); };
    for (const auto& knots : knots_for(coeffs, region)) integral += integrate_knots(g, knots, 2, opt);
    est.value = std::exp(integral / mass);
  } else {
    const auto g = [&](double t) { return std::pow(std::abs(univariate::evaluate(coeffs, t)), p) * density(mu, t); };
    const double dp = p * static_cast<double>(f.degree());
    if (p > 0.0) {
      for (const auto& knots : knots_for(coeffs, region)) integral += quadrature_1d_pieces(g, knots, opt);
    } else {
      const auto k = static_cast<unsigned>(std::ceil(1.0 / (1.0 + dp))) + 1;
      for (const auto& knots : knots_for(coeffs, region)) integral += integrate_knots(g, knots, k, opt);
    }
    est.value = std::pow(integral / mass, 1.0 / p);
  }
  return est;
}

IntervalSet levelset_intervals(const Polynomial& f, const MeasureSpec& mu, double t) {
  const auto [lo, hi] = mu.support_1d();
  std::vector<double> coeffs = f.univariate_coefficients();
  std::vector<double> knots{lo};
  for (double shift : {t, -t}) {
    auto c = coeffs;
    c[0] -= shift;
    for (double r : univariate::real_roots(c, lo, hi)) knots.push_back(r);
  }
  knots.push_back(hi);
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
  std::vector<Interval> pieces;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double a = knots[i], b = knots[i + 1];
    const double mid = std::isfinite(b) ? 0.5 * (a + b) : a + 1.0;
    if (std::abs(univariate::evaluate(coeffs, mid)) <= t) pieces.push_back({a, b});
  }
  return IntervalSet(std::move(pieces));
}

NormEstimate lp_norm(const ScalarField& f, const MeasureSpec& mu, double p, const Budget& budget, std::uint64_t seed) {
  check_exponent(p, f.degree());
  if (p <= 0.0 && f.is_identically_zero()) throw EstimationError("norm with p <= 0 of the zero function");
  if (exact_path(f, mu, budget)) {
    const auto [lo, hi] = mu.support_1d();
    return exact_lp_norm(*f.univariate(), mu, p, IntervalSet({{lo, hi}}), budget.quadrature_tol);
  }
  const PointSet points = draw(mu, budget.samples, seed);
  const auto values = f.evaluate(points);
  return lp_from_values(values, p, z_value(budget.confidence, budget.family_size));
}

NormEstimate restricted_lp_norm(const ScalarField& f, const MeasureSpec& mu, const SetSpec& A, double p,
                                const Budget& budget, std::uint64_t seed) {
  check_exponent(p, f.degree());
  if (p <= 0.0 && f.is_identically_zero()) throw EstimationError("norm with p <= 0 of the zero function");
  if (exact_path(f, mu, budget) && A.dimension() <= 1) {
    const auto [lo, hi] = mu.support_1d();
    return exact_lp_norm(*f.univariate(), mu, p, A.to_intervals(lo, hi), budget.quadrature_tol);
  }
  const PointSet points = draw(mu, budget.samples, seed);
  std::vector<double> accepted;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (indicator(A, points[i])) accepted.push_back(f(points[i]));
  if (accepted.empty())
    throw EmptyRestriction("no sample out of " + std::to_string(points.size()) + " fell in " + A.describe());
  return lp_from_values(accepted, p, z_value(budget.confidence, budget.family_size));
}

ProbabilityEstimate levelset_measure(const ScalarField& f, const MeasureSpec& mu, double t, const Budget& budget,
                                     std::uint64_t seed) {
  if (!(t >= 0.0)) throw std::invalid_argument("level-set threshold must be non-negative");
  if (exact_path(f, mu, budget)) {
    ProbabilityEstimate est;
    est.mode = EstimateMode::exact;
    est.value = interval_measure(mu, levelset_intervals(*f.univariate(), mu, t));
    return est;
  }
  const PointSet points = draw(mu, budget.samples, seed);
  const auto values = f.evaluate(points);
  const auto hits = static_cast<std::size_t>(std::count_if(values.begin(), values.end(), [t](double v) { return v <= t; }));
  return binomial_estimate(hits, values.size(), z_value(budget.confidence, budget.family_size));
}

ProbabilityEstimate set_measure(const MeasureSpec& mu, const SetSpec& A, const Budget& budget, std::uint64_t seed) {
  if (budget.allow_exact && mu.is_exact_1d() && A.dimension() <= 1) {
    const auto [lo, hi] = mu.support_1d();
    ProbabilityEstimate est;
    est.mode = EstimateMode::exact;
    est.value = interval_measure(mu, A.to_intervals(lo, hi));
    return est;
  }
  const PointSet points = draw(mu, budget.samples, seed);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < points.size(); ++i) hits += indicator(A, points[i]) ? 1 : 0;
  return binomial_estimate(hits, points.size(), z_value(budget.confidence, budget.family_size));
}

}  // namespace remez
