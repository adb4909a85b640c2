#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace remez {

/// Thrown when a point or direction does not match the ambient dimension.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Exponent = std::vector<unsigned>;

/// Multivariate real polynomial in collapsed monomial form.
///
/// Terms are kept in a sparse map keyed by exponent multi-index. Zero
/// coefficients are never stored, and the cached degree is the largest
/// total degree among stored terms (0 for the zero polynomial).
class Polynomial {
 public:
  explicit Polynomial(std::size_t dimension);
  Polynomial(std::size_t dimension, std::map<Exponent, double> terms);

  static Polynomial constant(std::size_t dimension, double value);
  /// c[0] + c[1] t + c[2] t^2 + ...
  static Polynomial univariate(std::span<const double> coefficients);

  std::size_t dimension() const noexcept { return dimension_; }
  unsigned degree() const noexcept { return degree_; }
  const std::map<Exponent, double>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  double operator()(std::span<const double> x) const;
  /// Evaluation without the dimension check; x must hold dimension() values.
  double evaluate_unchecked(const double* x) const noexcept;

  Polynomial scaled(double alpha) const;

  /// Dense coefficient vector c[0..degree] of a one-variable polynomial.
  std::vector<double> univariate_coefficients() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.dimension_ == b.dimension_ && a.terms_ == b.terms_;
  }

 private:
  void rebuild();

  std::size_t dimension_;
  std::map<Exponent, double> terms_;
  unsigned degree_ = 0;
  // Flattened copy of terms_ for evaluation.
  std::vector<double> coeffs_;
  std::vector<std::uint8_t> powers_;
};

/// q(t) = P(a + t v) as an exact one-variable polynomial.
Polynomial restrict_to_line(const Polynomial& p, std::span<const double> a,
                            std::span<const double> v);

enum class CoefficientLaw { standard_normal, uniform, spiked };

/// Dense random polynomial with all C(n+d, d) monomials of total degree <= d.
///
/// With the spiked law one top-degree coefficient is multiplied by 10.
Polynomial random_polynomial(std::size_t n, unsigned d, std::uint64_t seed,
                             CoefficientLaw law = CoefficientLaw::standard_normal);

/// All multi-indices of total degree <= d, graded lexicographic order.
std::vector<Exponent> monomials_up_to(std::size_t n, unsigned d);

/// Text form: one term per line, "c e1 e2 ... en". Lines starting with '#'
/// and blank lines are ignored when reading.
std::string to_text(const Polynomial& p);
Polynomial polynomial_from_text(std::string_view text, std::size_t dimension);

enum class CodomainNorm { euclidean, sup, one };

/// Polynomial map R^n -> R^m; the codomain norm plays the role of the target
/// space norm in every inequality.
class PolynomialMap {
 public:
  PolynomialMap(std::vector<Polynomial> components, CodomainNorm norm);

  std::size_t dimension() const noexcept { return components_.front().dimension(); }
  std::size_t codomain_dimension() const noexcept { return components_.size(); }
  unsigned degree() const noexcept;
  CodomainNorm norm() const noexcept { return norm_; }
  const std::vector<Polynomial>& components() const noexcept { return components_; }

  PolynomialMap scaled(double alpha) const;

 private:
  std::vector<Polynomial> components_;
  CodomainNorm norm_;
};

double eval_map_norm(const PolynomialMap& f, std::span<const double> x);

/// f(x) = sum_k exp(i <l_k, x>).
class TrigPolynomial {
 public:
  explicit TrigPolynomial(std::vector<std::vector<double>> functionals);

  std::size_t dimension() const noexcept { return functionals_.front().size(); }
  unsigned degree() const noexcept { return static_cast<unsigned>(functionals_.size()); }
  const std::vector<std::vector<double>>& functionals() const noexcept { return functionals_; }

 private:
  std::vector<std::vector<double>> functionals_;
};

/// |f(x)|, always within [0, degree].
double eval_trig_modulus(const TrigPolynomial& t, std::span<const double> x);

namespace univariate {

/// Horner evaluation of c[0] + c[1] t + ...
double evaluate(std::span<const double> c, double t) noexcept;
std::vector<double> derivative(std::span<const double> c);

/// Real roots in [lo, hi], sorted. hi may be +infinity and lo -infinity;
/// infinite ends are replaced by the Cauchy root bound. The zero polynomial
/// has no isolated roots and yields an empty list.
std::vector<double> real_roots(std::span<const double> c, double lo, double hi);

/// Cauchy bound: every real root has |t| <= bound.
double root_bound(std::span<const double> c);

}  // namespace univariate

}  // namespace remez
