#include "remez/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace remez {
namespace {

constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrod = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes (and the centre).
constexpr std::array<double, 4> kGauss = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
  double a, b, value, error;
  bool operator<(const Piece& o) const { return error < o.error; }
};

Piece kronrod(const std::function<double(double)>& g, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double fc = g(c);
  double k = kKronrod[7] * fc;
  double gs = kGauss[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kNodes[i];
    const double s = g(c - dx) + g(c + dx);
    k += kKronrod[i] * s;
    if (i % 2 == 1) gs += kGauss[i / 2] * s;
  }
  k *= h;
  gs *= h;
  double err = std::abs(k - gs);
  if (!std::isfinite(k)) throw QuadratureError("quadrature: integrand is not finite on [" + std::to_string(a) + ", " + std::to_string(b) + "]");
  return {a, b, k, err};
}

double adaptive(const std::function<double(double)>& g, double a, double b, const QuadratureOptions& opt) {
  if (a == b) return 0.0;
  std::priority_queue<Piece> heap;
  std::vector<Piece> settled;
  Piece first = kronrod(g, a, b);
  double total = first.value, error = first.error;
  heap.push(first);
  std::size_t subdivisions = 0;
  while (!heap.empty()) {
    const double target = std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
    if (error <= target) break;
    if (subdivisions >= opt.max_subdivisions)
      throw QuadratureError("quadrature: subdivision budget exhausted (error estimate " + std::to_string(error) +
                            ", target " + std::to_string(target) + ")");
    Piece worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    // Pieces at the resolution limit of doubles are accepted as they are.
    if (!(mid > worst.a && mid < worst.b) ||
        worst.b - worst.a <= 64 * std::numeric_limits<double>::epsilon() * std::max(std::abs(worst.a), std::abs(worst.b))) {
      error -= worst.error;
      settled.push_back(worst);
      continue;
    }
    const Piece left = kronrod(g, worst.a, mid), right = kronrod(g, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++subdivisions;
  }
  // Re-sum left to right so the result does not depend on heap order.
  while (!heap.empty()) {
    settled.push_back(heap.top());
    heap.pop();
  }
  std::sort(settled.begin(), settled.end(), [](const Piece& x, const Piece& y) { return x.a < y.a; });
  double sum = 0.0;
  for (const auto& p : settled) sum += p.value;
  return sum;
}

double halfline(const std::function<double(double)>& g, double a, const QuadratureOptions& opt) {
  double total = 0.0;
  double left = a, width = 1.0;
  int quiet = 0;
  for (int piece = 0; piece < 64; ++piece) {
    const double right = left + width;
    const double v = adaptive(g, left, right, opt);
    total += v;
    const double scale = std::max(std::abs(total), opt.abs_tol);
    const bool negligible = std::abs(v) <= 1e-3 * opt.rel_tol * scale || (scale == 0.0 && v == 0.0);
    quiet = negligible ? quiet + 1 : 0;
    // Two negligible pieces past the bulk of the weight end the tail.
    if (quiet >= 2 && right - a >= 32.0) return total;
    left = right;
    width *= 2.0;
  }
  throw QuadratureError("quadrature: half-line integrand does not decay");
}

}  // namespace

double quadrature_1d(const std::function<double(double)>& g, double a, double b, const QuadratureOptions& options) {
  if (std::isnan(a) || std::isnan(b)) throw std::invalid_argument("quadrature: NaN limit");
  if (a == b) return 0.0;
  if (a > b) return -quadrature_1d(g, b, a, options);
  if (std::isinf(a)) throw std::invalid_argument("quadrature: lower limit must be finite");
  if (std::isinf(b)) return halfline(g, a, options);
  return adaptive(g, a, b, options);
}

double quadrature_1d_pieces(const std::function<double(double)>& g, std::span<const double> knots,
                            const QuadratureOptions& options) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) sum += quadrature_1d(g, knots[i], knots[i + 1], options);
  return sum;
}

}  // namespace remez
