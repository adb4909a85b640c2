#include "remez/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace remez::bounds {
namespace {

void require_fraction(double frac, const char* name) {
  if (!(frac > 0.0 && frac <= 1.0)) {
    std::ostringstream msg;
    msg << name << " must lie in (0, 1], got " << frac;
    throw BoundError(msg.str());
  }
}

void require_theorem1(double p, unsigned d, double muA, double c) {
  if (!(p > 0.0) || !std::isfinite(p)) throw BoundError("theorem1_factor: p must be positive and finite");
  if (d < 1) throw BoundError("theorem1_factor: degree must be at least 1");
  require_fraction(muA, "muA");
  if (!(c > 0.0)) throw BoundError("theorem1_factor: c must be positive");
}

}  // namespace

void BoundParams::validate() const {
  if (d < 1) throw BoundError("degree must be at least 1");
  require_fraction(muA, "muA");
  if (!(c > 0.0)) throw BoundError("c must be positive");
  if (!(R > 0.0)) throw BoundError("R must be positive");
}

double classical_remez_bound(unsigned d, double frac) { return classical_remez_bound(d, frac, kPolynomialR); }

double classical_remez_bound(unsigned d, double frac, double R) {
  require_fraction(frac, "lambda(A)");
  if (!(R > 0.0)) throw BoundError("R must be positive");
  return std::pow(R / frac, static_cast<double>(d));
}

double bg_bound(unsigned n, unsigned d, double frac) {
  if (n < 1) throw BoundError("bg_bound: dimension must be at least 1");
  require_fraction(frac, "lambda(A)");
  return std::pow(4.0 * static_cast<double>(n) / frac, static_cast<double>(d));
}

double theorem1_low_branch(double p, unsigned d, double muA, double c) {
  require_theorem1(p, d, muA, c);
  const double dd = static_cast<double>(d);
  return std::pow(muA / c, dd) * std::pow(dd * p + 1.0, -1.0 / p);
}

double theorem1_high_branch(double p, unsigned d, double muA, double c) {
  require_theorem1(p, d, muA, c);
  const double dd = static_cast<double>(d);
  return std::pow(muA / (c * p * dd), dd) * std::pow(p + 1.0 / dd, -1.0 / p);
}

double theorem1_factor(double p, unsigned d, double muA, double c) {
  return p * static_cast<double>(d) < 1.0 ? theorem1_low_branch(p, d, muA, c) : theorem1_high_branch(p, d, muA, c);
}

SelfConsistency theorem1_self_consistency(double p, unsigned d, double c) {
  const double k = theorem1_factor(p, d, 1.0, c);
  return {k, k <= 1.0};
}

double cw_levelset_bound(double t, double norm_p, double p, unsigned d, double c) {
  if (!(t >= 0.0)) throw BoundError("cw_levelset_bound: t must be non-negative");
  if (!(norm_p > 0.0)) throw BoundError("cw_levelset_bound: ||f||_p must be positive");
  if (!(p > 0.0)) throw BoundError("cw_levelset_bound: p must be positive");
  if (d < 1) throw BoundError("cw_levelset_bound: degree must be at least 1");
  if (!(c > 0.0)) throw BoundError("cw_levelset_bound: c must be positive");
  const double dd = static_cast<double>(d);
  const double ratio = std::pow(t / norm_p, 1.0 / dd);
  const double raw = p * dd >= 1.0 ? c * ratio * p * dd : c * ratio;
  return std::min(1.0, raw);
}

double class_constant_from_R(double R) {
  if (!(R > 0.0)) throw BoundError("class_constant_from_R: R must be positive");
  return 3.0 * R * R;
}

double negative_p_bound(double muA, double p) {
  if (!(p < 0.0)) throw BoundError("negative_p_bound: p must be negative");
  require_fraction(muA, "muA");
  return std::pow(muA, 1.0 / p);
}

}  // namespace remez::bounds
