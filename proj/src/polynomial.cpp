#include "remez/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <sstream>

#include "remez/random.hpp"

namespace remez {
namespace {

void require_dimension(std::size_t expected, std::size_t got, const char* what) {
  if (expected != got) {
    std::ostringstream msg;
    msg << what << ": expected dimension " << expected << ", got " << got;
    throw DimensionError(msg.str());
  }
}

std::vector<double> multiply(std::span<const double> a, std::span<const double> b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

void trim(std::vector<double>& c) {
  while (c.size() > 1 && c.back() == 0.0) c.pop_back();
}

}  // namespace

Polynomial::Polynomial(std::size_t dimension) : dimension_(dimension) {
  if (dimension == 0) throw std::invalid_argument("polynomial dimension must be positive");
}

Polynomial::Polynomial(std::size_t dimension, std::map<Exponent, double> terms)
    : dimension_(dimension), terms_(std::move(terms)) {
  if (dimension == 0) throw std::invalid_argument("polynomial dimension must be positive");
  std::erase_if(terms_, [](const auto& kv) { return kv.second == 0.0; });
  for (const auto& [e, c] : terms_) require_dimension(dimension_, e.size(), "polynomial term");
  rebuild();
}

void Polynomial::rebuild() {
  degree_ = 0;
  coeffs_.clear();
  powers_.clear();
  coeffs_.reserve(terms_.size());
  powers_.reserve(terms_.size() * dimension_);
  for (const auto& [e, c] : terms_) {
    degree_ = std::max(degree_, std::accumulate(e.begin(), e.end(), 0u));
    coeffs_.push_back(c);
    for (unsigned k : e) {
      if (k > 255) throw std::invalid_argument("exponent above 255 is not supported");
      powers_.push_back(static_cast<std::uint8_t>(k));
    }
  }
}

Polynomial Polynomial::constant(std::size_t dimension, double value) {
  std::map<Exponent, double> terms;
  terms[Exponent(dimension, 0)] = value;
  return Polynomial(dimension, std::move(terms));
}

Polynomial Polynomial::univariate(std::span<const double> coefficients) {
  std::map<Exponent, double> terms;
  for (std::size_t k = 0; k < coefficients.size(); ++k)
    terms[Exponent{static_cast<unsigned>(k)}] = coefficients[k];
  return Polynomial(1, std::move(terms));
}

double Polynomial::operator()(std::span<const double> x) const {
  require_dimension(dimension_, x.size(), "eval_polynomial");
  return evaluate_unchecked(x.data());
}

double Polynomial::evaluate_unchecked(const double* x) const noexcept {
  double sum = 0.0;
  const std::uint8_t* e = powers_.data();
  for (double c : coeffs_) {
    double term = c;
    for (std::size_t i = 0; i < dimension_; ++i, ++e)
      for (std::uint8_t k = *e; k > 0; --k) term *= x[i];
    sum += term;
  }
  return sum;
}

Polynomial Polynomial::scaled(double alpha) const {
  auto terms = terms_;
  for (auto& [e, c] : terms) c *= alpha;
  return Polynomial(dimension_, std::move(terms));
}

std::vector<double> Polynomial::univariate_coefficients() const {
  if (dimension_ != 1) throw DimensionError("univariate_coefficients: polynomial is not univariate");
  std::vector<double> c(degree_ + 1, 0.0);
  for (const auto& [e, v] : terms_) c[e[0]] = v;
  return c;
}

Polynomial restrict_to_line(const Polynomial& p, std::span<const double> a,
                            std::span<const double> v) {
  require_dimension(p.dimension(), a.size(), "restrict_to_line base point");
  require_dimension(p.dimension(), v.size(), "restrict_to_line direction");
  if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; }))
    throw std::invalid_argument("restrict_to_line: zero direction vector");

  std::vector<double> q(p.degree() + 1, 0.0);
  for (const auto& [e, c] : p.terms()) {
    std::vector<double> term{c};
    for (std::size_t i = 0; i < e.size(); ++i) {
      const double linear[2] = {a[i], v[i]};
      for (unsigned k = 0; k < e[i]; ++k) term = multiply(term, linear);
    }
    for (std::size_t k = 0; k < term.size(); ++k) q[k] += term[k];
  }
  return Polynomial::univariate(q);
}

std::vector<Exponent> monomials_up_to(std::size_t n, unsigned d) {
  std::vector<Exponent> out;
  Exponent e(n, 0);
  // Enumerate compositions of each total degree.
  auto recurse = [&](auto&& self, std::size_t i, unsigned remaining) -> void {
    if (i + 1 == n) {
      e[i] = remaining;
      out.push_back(e);
      return;
    }
    for (unsigned k = remaining + 1; k-- > 0;) {
      e[i] = k;
      self(self, i + 1, remaining - k);
    }
  };
  for (unsigned total = 0; total <= d; ++total) recurse(recurse, 0, total);
  return out;
}

Polynomial random_polynomial(std::size_t n, unsigned d, std::uint64_t seed, CoefficientLaw law) {
  if (n == 0) throw std::invalid_argument("random_polynomial: n must be positive");
  Stream rng(seed, 0x706F6C79);  // "poly"
  std::map<Exponent, double> terms;
  const auto monomials = monomials_up_to(n, d);
  for (const auto& e : monomials) {
    double c = 0.0;
    switch (law) {
      case CoefficientLaw::uniform:
        c = rng.uniform(-1.0, 1.0);
        break;
      case CoefficientLaw::standard_normal:
      case CoefficientLaw::spiked:
        c = rng.normal();
        break;
    }
    terms[e] = c;
  }
  if (law == CoefficientLaw::spiked && d > 0) {
    // Monomials of degree d occupy the tail of the graded enumeration.
    const std::size_t top = monomials.size() - monomials_up_to(n, d - 1).size();
    const auto& spike = monomials[monomials.size() - top + rng.below(top)];
    terms[spike] *= 10.0;
  }
  return Polynomial(n, std::move(terms));
}

std::string to_text(const Polynomial& p) {
  std::ostringstream out;
  out.precision(17);
  for (const auto& [e, c] : p.terms()) {
    out << c;
    for (unsigned k : e) out << ' ' << k;
    out << '\n';
  }
  return out.str();
}

Polynomial polynomial_from_text(std::string_view text, std::size_t dimension) {
  std::map<Exponent, double> terms;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    double c = 0.0;
    if (!(fields >> c)) throw std::invalid_argument("polynomial line " + std::to_string(line_no) + ": bad coefficient");
    Exponent e;
    long k = 0;
    while (fields >> k) {
      if (k < 0) throw std::invalid_argument("polynomial line " + std::to_string(line_no) + ": negative exponent");
      e.push_back(static_cast<unsigned>(k));
    }
    if (!fields.eof()) throw std::invalid_argument("polynomial line " + std::to_string(line_no) + ": bad exponent");
    require_dimension(dimension, e.size(), "polynomial text");
    terms[e] += c;
  }
  return Polynomial(dimension, std::move(terms));
}

PolynomialMap::PolynomialMap(std::vector<Polynomial> components, CodomainNorm norm)
    : components_(std::move(components)), norm_(norm) {
  if (components_.empty()) throw std::invalid_argument("polynomial map needs at least one component");
  for (const auto& c : components_)
    require_dimension(components_.front().dimension(), c.dimension(), "polynomial map component");
}

unsigned PolynomialMap::degree() const noexcept {
  unsigned d = 0;
  for (const auto& c : components_) d = std::max(d, c.degree());
  return d;
}

PolynomialMap PolynomialMap::scaled(double alpha) const {
  std::vector<Polynomial> out;
  out.reserve(components_.size());
  for (const auto& c : components_) out.push_back(c.scaled(alpha));
  return PolynomialMap(std::move(out), norm_);
}

double eval_map_norm(const PolynomialMap& f, std::span<const double> x) {
  require_dimension(f.dimension(), x.size(), "eval_map_norm");
  double acc = 0.0;
  for (const auto& c : f.components()) {
    const double v = std::abs(c.evaluate_unchecked(x.data()));
    switch (f.norm()) {
      case CodomainNorm::euclidean: acc += v * v; break;
      case CodomainNorm::sup: acc = std::max(acc, v); break;
      case CodomainNorm::one: acc += v; break;
    }
  }
  return f.norm() == CodomainNorm::euclidean ? std::sqrt(acc) : acc;
}

TrigPolynomial::TrigPolynomial(std::vector<std::vector<double>> functionals)
    : functionals_(std::move(functionals)) {
  if (functionals_.empty()) throw std::invalid_argument("trigonometric polynomial needs at least one functional");
  for (const auto& l : functionals_) {
    if (l.empty()) throw std::invalid_argument("functional of dimension 0");
    require_dimension(functionals_.front().size(), l.size(), "trigonometric functional");
  }
}

double eval_trig_modulus(const TrigPolynomial& t, std::span<const double> x) {
  require_dimension(t.dimension(), x.size(), "eval_trig_modulus");
  std::complex<double> sum{0.0, 0.0};
  for (const auto& l : t.functionals()) {
    double phase = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) phase += l[i] * x[i];
    sum += std::polar(1.0, phase);
  }
  return std::min(std::abs(sum), static_cast<double>(t.degree()));
}

namespace univariate {

double evaluate(std::span<const double> c, double t) noexcept {
  double acc = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * t + c[k];
  return acc;
}

std::vector<double> derivative(std::span<const double> c) {
  if (c.size() <= 1) return {0.0};
  std::vector<double> out(c.size() - 1);
  for (std::size_t k = 1; k < c.size(); ++k) out[k - 1] = static_cast<double>(k) * c[k];
  return out;
}

double root_bound(std::span<const double> c) {
  std::vector<double> v(c.begin(), c.end());
  trim(v);
  if (v.size() <= 1) return 0.0;
  double m = 0.0;
  for (std::size_t k = 0; k + 1 < v.size(); ++k) m = std::max(m, std::abs(v[k] / v.back()));
  return 1.0 + m;
}

namespace {

// Root of a function that is monotone on [lo, hi] with a sign change.
double bisect(std::span<const double> c, double lo, double hi, double flo) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = evaluate(c, mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> roots_finite(std::span<const double> c, double lo, double hi) {
  if (c.size() <= 1) return {};
  if (c.size() == 2) {
    const double r = -c[0] / c[1];
    if (r >= lo && r <= hi) return {r};
    return {};
  }
  std::vector<double> d = derivative(c);
  trim(d);
  std::vector<double> knots{lo};
  for (double r : roots_finite(d, lo, hi))
    if (r > knots.back()) knots.push_back(r);
  if (hi > knots.back()) knots.push_back(hi);

  std::vector<double> roots;
  auto push = [&](double r) {
    if (roots.empty() || r > roots.back()) roots.push_back(r);
  };
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const double a = knots[i], b = knots[i + 1];
    const double fa = evaluate(c, a), fb = evaluate(c, b);
    if (fa == 0.0) push(a);
    if ((fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0)) push(bisect(c, a, b, fa));
  }
  if (knots.size() == 1) {
    if (evaluate(c, lo) == 0.0) push(lo);
  } else if (evaluate(c, knots.back()) == 0.0) {
    push(knots.back());
  }
  return roots;
}

}  // namespace

std::vector<double> real_roots(std::span<const double> c, double lo, double hi) {
  std::vector<double> v(c.begin(), c.end());
  trim(v);
  if (v.size() <= 1) return {};
  const double bound = root_bound(v);
  lo = std::max(lo, -bound);
  hi = std::min(hi, bound);
  if (lo > hi) return {};
  return roots_finite(v, lo, hi);
}

}  // namespace univariate
}  // namespace remez
