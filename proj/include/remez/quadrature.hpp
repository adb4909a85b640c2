#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>

namespace remez {

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QuadratureOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  std::size_t max_subdivisions = 5000;
};

/// Globally adaptive Gauss-Kronrod (7/15) integration of g over [a, b].
///
/// b may be +infinity, in which case the integrand must decay integrably
/// (the caller supplies the weight, e.g. e^{-t}). The half-line is cut into
/// pieces of doubling width and truncated once successive pieces no longer
/// contribute at the requested relative tolerance. Integrable endpoint
/// singularities are handled by subdivision. Throws QuadratureError when the
/// subdivision budget runs out before the tolerance is met.
double quadrature_1d(const std::function<double(double)>& g, double a, double b,
                     const QuadratureOptions& options = {});

/// Integrates over consecutive pieces [knots[i], knots[i+1]] separately so
/// that known kinks or singularities sit on piece boundaries.
double quadrature_1d_pieces(const std::function<double(double)>& g, std::span<const double> knots,
                            const QuadratureOptions& options = {});

}  // namespace remez
