#pragma once

#include <stdexcept>

namespace remez::bounds {

/// Precondition violation in a bound formula.
class BoundError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline constexpr double kDefaultC = 4.0;
/// Classical one-dimensional Remez constant for algebraic polynomials.
inline constexpr double kPolynomialR = 4.0;
/// Classical one-dimensional Remez constant for trigonometric polynomials.
inline constexpr double kTrigR = 316.0;

/// Symbols shared by the bound formulas.
struct BoundParams {
  double p = 1.0;
  unsigned d = 1;
  double muA = 1.0;
  double c = kDefaultC;
  unsigned n = 1;
  double R = kPolynomialR;

  /// Throws BoundError unless d >= 1, 0 < muA <= 1, c > 0 and R > 0.
  void validate() const;
};

/// (4 / frac)^d: sup over an interval against sup over a subset of relative
/// length frac.
double classical_remez_bound(unsigned d, double frac);
/// Same with the 4 replaced by a class constant R.
double classical_remez_bound(unsigned d, double frac, double R);

/// (4 n / frac)^d for uniform laws on convex bodies in R^n.
double bg_bound(unsigned n, unsigned d, double frac);

/// Factor K with ||f||_{p,A} >= K ||f||_p.
///
///   pd <  1:  (muA / c)^d (dp + 1)^{-1/p}
///   pd >= 1:  (muA / (c p d))^d (p + 1/d)^{-1/p}
///
/// The two branches do not agree at pd = 1; the closed branch pd >= 1 wins.
double theorem1_factor(double p, unsigned d, double muA, double c);
inline double theorem1_factor(const BoundParams& b) { return theorem1_factor(b.p, b.d, b.muA, b.c); }

/// The pd < 1 and pd >= 1 formulas evaluated regardless of regime.
double theorem1_low_branch(double p, unsigned d, double muA, double c);
double theorem1_high_branch(double p, unsigned d, double muA, double c);

struct SelfConsistency {
  double factor_at_full_measure;
  bool consistent;  // factor(muA = 1) <= 1
};
/// With A the whole space both norms coincide, so the factor at muA = 1 must
/// not exceed 1; a larger value means c is too small for (p, d).
SelfConsistency theorem1_self_consistency(double p, unsigned d, double c);

/// Upper bound on mu(|f| <= t) given ||f||_p, capped at 1.
///
///   pd >= 1:  c t^{1/d} p d / ||f||_p^{1/d}
///   pd <  1:  c t^{1/d} / ||f||_p^{1/d}
double cw_levelset_bound(double t, double norm_p, double p, unsigned d, double c);

/// c = 3 R^2 for function classes whose restrictions to lines satisfy a
/// classical Remez inequality with constant R.
double class_constant_from_R(double R);

/// muA^{1/p} for p < 0: ||f||_p <= muA^{1/p} ||f||_{p,A}.
double negative_p_bound(double muA, double p);

}  // namespace remez::bounds
