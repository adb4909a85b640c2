#include "remez/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "remez/linear_program.hpp"
#include "remez/random.hpp"

namespace remez {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_dimension(std::size_t expected, std::size_t got, const char* what) {
  if (expected != got) {
    std::ostringstream msg;
    msg << what << ": expected dimension " << expected << ", got " << got;
    throw DimensionError(msg.str());
  }
}

void check_dimension(std::size_t n) {
  if (n == 0) throw std::invalid_argument("measure dimension must be positive");
  if (n > kMaxDimension)
    throw std::invalid_argument("measure dimension " + std::to_string(n) + " exceeds the supported maximum " +
                                std::to_string(kMaxDimension));
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double midpoint(double a, double b) {
  if (std::isfinite(a) && std::isfinite(b)) return 0.5 * (a + b);
  if (std::isfinite(a)) return a + 1.0;
  if (std::isfinite(b)) return b - 1.0;
  return 0.0;
}

}  // namespace

std::string to_string(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::uniform_box: return "uniform_box";
    case MeasureKind::uniform_ball: return "uniform_ball";
    case MeasureKind::uniform_simplex: return "uniform_simplex";
    case MeasureKind::uniform_polytope: return "uniform_polytope";
    case MeasureKind::exponential_halfline: return "exponential_halfline";
    case MeasureKind::gaussian_standard: return "gaussian_standard";
    case MeasureKind::interval_uniform: return "interval_uniform";
  }
  return "unknown";
}

MeasureKind measure_kind_from_string(const std::string& name) {
  for (auto k : {MeasureKind::uniform_box, MeasureKind::uniform_ball, MeasureKind::uniform_simplex,
                 MeasureKind::uniform_polytope, MeasureKind::exponential_halfline,
                 MeasureKind::gaussian_standard, MeasureKind::interval_uniform})
    if (to_string(k) == name) return k;
  throw std::invalid_argument("unknown measure kind '" + name + "'");
}

MeasureSpec::MeasureSpec(MeasureKind kind, std::size_t n) : kind_(kind), dimension_(n) {
  check_dimension(n);
}

MeasureSpec MeasureSpec::box(std::size_t n, double lo, double hi) {
  check_dimension(n);
  return box(std::vector<double>(n, lo), std::vector<double>(n, hi));
}

MeasureSpec MeasureSpec::box(std::vector<double> lo, std::vector<double> hi) {
  require_dimension(lo.size(), hi.size(), "box bounds");
  MeasureSpec m(MeasureKind::uniform_box, lo.size());
  const std::size_t n = lo.size();
  for (std::size_t i = 0; i < n; ++i)
    if (!(lo[i] < hi[i]) || !std::isfinite(lo[i]) || !std::isfinite(hi[i]))
      throw MeasureError("box side " + std::to_string(i) + " is empty or unbounded");
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row(n, 0.0);
    row[i] = 1.0;
    m.system_.A.push_back(row);
    m.system_.b.push_back(hi[i]);
    row[i] = -1.0;
    m.system_.A.push_back(row);
    m.system_.b.push_back(-lo[i]);
    m.interior_.push_back(0.5 * (lo[i] + hi[i]));
  }
  m.lo_ = std::move(lo);
  m.hi_ = std::move(hi);
  return m;
}

MeasureSpec MeasureSpec::ball(std::size_t n, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw MeasureError("ball radius must be positive and finite");
  MeasureSpec m(MeasureKind::uniform_ball, n);
  m.radius_ = radius;
  m.interior_.assign(n, 0.0);
  return m;
}

MeasureSpec MeasureSpec::simplex(std::size_t n) {
  MeasureSpec m(MeasureKind::uniform_simplex, n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row(n, 0.0);
    row[i] = -1.0;
    m.system_.A.push_back(row);
    m.system_.b.push_back(0.0);
  }
  m.system_.A.emplace_back(n, 1.0);
  m.system_.b.push_back(1.0);
  m.interior_.assign(n, 1.0 / static_cast<double>(n + 1));
  return m;
}

MeasureSpec MeasureSpec::polytope(HalfspaceSystem system) {
  if (system.A.empty()) throw MeasureError("polytope has no constraints");
  require_dimension(system.A.size(), system.b.size(), "polytope right-hand side");
  const std::size_t n = system.A.front().size();
  for (const auto& row : system.A) require_dimension(n, row.size(), "polytope row");
  MeasureSpec m(MeasureKind::uniform_polytope, n);
  const std::size_t rows = system.A.size();

  // Boundedness: every coordinate must be bounded above and below.
  std::vector<std::vector<double>> split(rows, std::vector<double>(2 * n));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      split[i][j] = system.A[i][j];
      split[i][n + j] = -system.A[i][j];
    }
  for (std::size_t j = 0; j < n; ++j)
    for (double sign : {1.0, -1.0}) {
      std::vector<double> c(2 * n, 0.0);
      c[j] = sign;
      c[n + j] = -sign;
      const auto sol = lp::maximize(c, split, system.b);
      if (sol.status == lp::Status::infeasible) throw MeasureError("polytope is empty");
      if (sol.status == lp::Status::unbounded)
        throw MeasureError("polytope is unbounded along coordinate " + std::to_string(j));
    }

  // Chebyshev centre: max r s.t. a_i.x + |a_i| r <= b_i.
  std::vector<std::vector<double>> cheb(rows + 1, std::vector<double>(2 * n + 1, 0.0));
  std::vector<double> h = system.b;
  for (std::size_t i = 0; i < rows; ++i) {
    std::copy(split[i].begin(), split[i].end(), cheb[i].begin());
    cheb[i][2 * n] = std::sqrt(dot(system.A[i], system.A[i]));
  }
  cheb[rows][2 * n] = 1.0;
  h.push_back(1e6);
  std::vector<double> c(2 * n + 1, 0.0);
  c[2 * n] = 1.0;
  const auto sol = lp::maximize(c, cheb, h);
  if (sol.status != lp::Status::optimal) throw MeasureError("polytope is empty");
  const double r = sol.y[2 * n];
  if (!(r > 1e-10)) throw MeasureError("polytope has empty interior");
  m.interior_.resize(n);
  for (std::size_t j = 0; j < n; ++j) m.interior_[j] = sol.y[j] - sol.y[n + j];
  m.system_ = std::move(system);
  return m;
}

MeasureSpec MeasureSpec::exponential() {
  MeasureSpec m(MeasureKind::exponential_halfline, 1);
  m.lo_ = {0.0};
  m.hi_ = {kInf};
  m.interior_ = {1.0};
  return m;
}

MeasureSpec MeasureSpec::gaussian(std::size_t n) {
  MeasureSpec m(MeasureKind::gaussian_standard, n);
  m.interior_.assign(n, 0.0);
  return m;
}

MeasureSpec MeasureSpec::interval(double a, double b) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) throw MeasureError("interval must satisfy a < b, both finite");
  MeasureSpec m(MeasureKind::interval_uniform, 1);
  m.lo_ = {a};
  m.hi_ = {b};
  m.system_.A = {{1.0}, {-1.0}};
  m.system_.b = {b, -a};
  m.interior_ = {0.5 * (a + b)};
  return m;
}

MeasureSpec MeasureSpec::with_policy(SamplerPolicy policy, HitAndRunParams params) const {
  MeasureSpec out = *this;
  out.policy_ = policy;
  out.chain_ = params;
  return out;
}

bool MeasureSpec::has_body() const noexcept {
  return kind_ != MeasureKind::exponential_halfline && kind_ != MeasureKind::gaussian_standard;
}

std::pair<double, double> MeasureSpec::support_1d() const {
  if (dimension_ != 1) throw DimensionError("support_1d: measure is not one-dimensional");
  switch (kind_) {
    case MeasureKind::interval_uniform:
    case MeasureKind::uniform_box: return {lo_[0], hi_[0]};
    case MeasureKind::exponential_halfline: return {0.0, kInf};
    case MeasureKind::uniform_ball: return {-radius_, radius_};
    case MeasureKind::uniform_simplex: return {0.0, 1.0};
    default: return {-kInf, kInf};
  }
}

std::string MeasureSpec::describe() const {
  std::ostringstream out;
  out << to_string(kind_) << "(n=" << dimension_;
  if (kind_ == MeasureKind::interval_uniform) out << ",[" << lo_[0] << "," << hi_[0] << "]";
  if (kind_ == MeasureKind::uniform_ball && radius_ != 1.0) out << ",r=" << radius_;
  if (kind_ == MeasureKind::uniform_polytope) out << ",rows=" << system_.A.size();
  if (policy_ == SamplerPolicy::hit_and_run) out << ",hit_and_run";
  out << ")";
  return out.str();
}

bool membership(const MeasureSpec& spec, std::span<const double> x) {
  require_dimension(spec.dimension(), x.size(), "membership");
  switch (spec.kind()) {
    case MeasureKind::uniform_ball:
      return dot(x, x) <= spec.radius() * spec.radius();
    case MeasureKind::uniform_box:
      for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] < spec.lower()[i] || x[i] > spec.upper()[i]) return false;
      return true;
    case MeasureKind::uniform_simplex: {
      double s = 0.0;
      for (double v : x) {
        if (v < 0.0) return false;
        s += v;
      }
      return s <= 1.0;
    }
    case MeasureKind::uniform_polytope:
    case MeasureKind::interval_uniform: {
      const auto& sys = spec.halfspaces();
      for (std::size_t i = 0; i < sys.A.size(); ++i)
        if (dot(sys.A[i], x) > sys.b[i]) return false;
      return true;
    }
    case MeasureKind::exponential_halfline:
    case MeasureKind::gaussian_standard:
      break;
  }
  throw MeasureError("membership: " + to_string(spec.kind()) + " has no body");
}

namespace {

void draw_point(const MeasureSpec& spec, Stream& rng, std::span<double> x) {
  const std::size_t n = spec.dimension();
  switch (spec.kind()) {
    case MeasureKind::uniform_box:
      for (std::size_t i = 0; i < n; ++i) x[i] = rng.uniform(spec.lower()[i], spec.upper()[i]);
      return;
    case MeasureKind::interval_uniform:
      x[0] = rng.uniform(spec.lower()[0], spec.upper()[0]);
      return;
    case MeasureKind::uniform_ball: {
      double norm2 = 0.0;
      do {
        norm2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          x[i] = rng.normal();
          norm2 += x[i] * x[i];
        }
      } while (norm2 == 0.0);
      const double scale = spec.radius() * std::pow(rng.uniform(), 1.0 / static_cast<double>(n)) / std::sqrt(norm2);
      for (std::size_t i = 0; i < n; ++i) x[i] *= scale;
      return;
    }
    case MeasureKind::uniform_simplex: {
      double total = rng.exponential();
      for (std::size_t i = 0; i < n; ++i) {
        x[i] = rng.exponential();
        total += x[i];
      }
      for (std::size_t i = 0; i < n; ++i) x[i] /= total;
      return;
    }
    case MeasureKind::exponential_halfline:
      x[0] = rng.exponential();
      return;
    case MeasureKind::gaussian_standard:
      for (std::size_t i = 0; i < n; ++i) x[i] = rng.normal();
      return;
    case MeasureKind::uniform_polytope:
      break;
  }
  throw MeasureError("sample_direct: " + to_string(spec.kind()) + " has no direct sampler");
}

// Chord {x + t u} ∩ body as [tmin, tmax].
std::pair<double, double> chord(const MeasureSpec& spec, std::span<const double> x, std::span<const double> u) {
  if (spec.kind() == MeasureKind::uniform_ball) {
    const double xu = dot(x, u), uu = dot(u, u);
    const double c = dot(x, x) - spec.radius() * spec.radius();
    const double disc = std::max(0.0, xu * xu - uu * c);
    const double root = std::sqrt(disc);
    return {(-xu - root) / uu, (-xu + root) / uu};
  }
  const auto& sys = spec.halfspaces();
  double tmin = -kInf, tmax = kInf;
  for (std::size_t i = 0; i < sys.A.size(); ++i) {
    const double au = dot(sys.A[i], u);
    const double slack = sys.b[i] - dot(sys.A[i], x);
    if (au > 0.0) tmax = std::min(tmax, slack / au);
    else if (au < 0.0) tmin = std::max(tmin, slack / au);
  }
  if (!std::isfinite(tmin) || !std::isfinite(tmax))
    throw MeasureError("hit_and_run: chord is unbounded; the body is not bounded");
  return {std::min(tmin, 0.0), std::max(tmax, 0.0)};
}

}  // namespace

PointSet sample_direct(const MeasureSpec& spec, std::size_t m, std::uint64_t seed, std::uint64_t stream) {
  if (!spec.has_direct_sampler())
    throw MeasureError("sample_direct: " + to_string(spec.kind()) + " has no direct sampler");
  PointSet out(spec.dimension(), m);
  for (std::size_t i = 0; i < m; ++i) {
    Stream rng(seed, stream, i);
    draw_point(spec, rng, out[i]);
  }
  return out;
}

PointSet hit_and_run(const MeasureSpec& spec, std::size_t m, std::uint64_t seed, HitAndRunParams params,
                     std::uint64_t stream) {
  switch (spec.kind()) {
    case MeasureKind::uniform_ball:
    case MeasureKind::uniform_box:
    case MeasureKind::uniform_simplex:
    case MeasureKind::uniform_polytope:
    case MeasureKind::interval_uniform:
      break;
    default:
      throw MeasureError("hit_and_run: " + to_string(spec.kind()) + " is not a uniform law on a body");
  }
  const std::size_t n = spec.dimension();
  const std::size_t burn_in = params.burn_in ? params.burn_in : 1000 * n;
  const std::size_t thinning = params.thinning ? params.thinning : n;

  std::vector<double> x = spec.interior_point();
  if (x.size() != n || !membership(spec, x)) throw MeasureError("hit_and_run: no interior point available");
  std::vector<double> u(n), y(n);
  Stream rng(seed, stream, 0x68697421);  // chain stream

  auto step = [&] {
    double norm2 = 0.0;
    do {
      norm2 = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        u[i] = rng.normal();
        norm2 += u[i] * u[i];
      }
    } while (norm2 == 0.0);
    const auto [tmin, tmax] = chord(spec, x, u);
    // Round-off can put an endpoint draw a hair outside the body.
    for (int attempt = 0; attempt < 16; ++attempt) {
      const double t = tmin + (tmax - tmin) * rng.uniform_open();
      for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + t * u[i];
      if (membership(spec, y)) {
        x.swap(y);
        return;
      }
    }
  };

  for (std::size_t s = 0; s < burn_in; ++s) step();
  PointSet out(n, m);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t s = 0; s < thinning; ++s) step();
    std::copy(x.begin(), x.end(), out[k].begin());
  }
  return out;
}

PointSet draw(const MeasureSpec& spec, std::size_t m, std::uint64_t seed, std::uint64_t stream) {
  if (spec.policy() == SamplerPolicy::hit_and_run || !spec.has_direct_sampler())
    return hit_and_run(spec, m, seed, spec.hit_and_run_params(), stream);
  return sample_direct(spec, m, seed, stream);
}

IntervalSet::IntervalSet(std::vector<Interval> pieces) {
  std::erase_if(pieces, [](const Interval& p) { return !(p.lo <= p.hi); });
  std::sort(pieces.begin(), pieces.end(), [](const Interval& a, const Interval& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  for (const auto& p : pieces) {
    if (!pieces_.empty() && p.lo <= pieces_.back().hi)
      pieces_.back().hi = std::max(pieces_.back().hi, p.hi);
    else
      pieces_.push_back(p);
  }
}

bool IntervalSet::contains(double t) const noexcept {
  for (const auto& p : pieces_)
    if (t >= p.lo && t <= p.hi) return true;
  return false;
}

double IntervalSet::length() const noexcept {
  double s = 0.0;
  for (const auto& p : pieces_) s += p.hi - p.lo;
  return s;
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
  std::vector<Interval> out;
  for (const auto& a : pieces_)
    for (const auto& b : other.pieces_) {
      const double lo = std::max(a.lo, b.lo), hi = std::min(a.hi, b.hi);
      if (lo <= hi) out.push_back({lo, hi});
    }
  return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
  std::vector<Interval> all = pieces_;
  all.insert(all.end(), other.pieces_.begin(), other.pieces_.end());
  return IntervalSet(std::move(all));
}

IntervalSet IntervalSet::complement(double lo, double hi) const {
  std::vector<Interval> out;
  double cursor = lo;
  for (const auto& p : pieces_) {
    if (p.hi < lo || p.lo > hi) continue;
    if (p.lo > cursor) out.push_back({cursor, p.lo});
    cursor = std::max(cursor, p.hi);
  }
  if (cursor < hi) out.push_back({cursor, hi});
  return IntervalSet(std::move(out));
}

double interval_measure(const MeasureSpec& spec, const IntervalSet& set) {
  const auto [lo, hi] = spec.support_1d();
  const IntervalSet clipped = set.intersect(IntervalSet({{lo, hi}}));
  switch (spec.kind()) {
    case MeasureKind::interval_uniform:
      return clipped.length() / (hi - lo);
    case MeasureKind::exponential_halfline: {
      double s = 0.0;
      for (const auto& p : clipped.pieces()) s += std::exp(-p.lo) - std::exp(-p.hi);
      return s;
    }
    default:
      throw MeasureError("interval_measure: exact 1-D measure needs an interval or exponential law");
  }
}

SetSpec SetSpec::whole() { return SetSpec(Whole{}); }

SetSpec SetSpec::halfspace(std::vector<double> a, double b) {
  if (a.empty()) throw std::invalid_argument("halfspace normal must be nonempty");
  return SetSpec(Halfspace{std::move(a), b});
}

SetSpec SetSpec::sublevel(Polynomial q, double s) { return SetSpec(Sublevel{std::move(q), s}); }

SetSpec SetSpec::intervals(std::vector<Interval> pieces) { return SetSpec(Intervals{IntervalSet(std::move(pieces))}); }

SetSpec SetSpec::complement(SetSpec inner) {
  return SetSpec(Complement{std::make_shared<const SetSpec>(std::move(inner))});
}

SetSpec SetSpec::intersection(std::vector<SetSpec> parts) {
  if (parts.empty()) return whole();
  return SetSpec(Intersection{std::move(parts)});
}

SetSpec SetSpec::with_measure(double value, double radius) const {
  SetSpec out = *this;
  out.cached_ = std::make_pair(value, radius);
  return out;
}

std::size_t SetSpec::dimension() const {
  struct Visitor {
    std::size_t operator()(const Whole&) const { return 0; }
    std::size_t operator()(const Halfspace& h) const { return h.a.size(); }
    std::size_t operator()(const Sublevel& s) const { return s.q.dimension(); }
    std::size_t operator()(const Intervals&) const { return 1; }
    std::size_t operator()(const Complement& c) const { return c.inner->dimension(); }
    std::size_t operator()(const Intersection& i) const {
      std::size_t n = 0;
      for (const auto& p : i.parts) {
        const std::size_t k = p.dimension();
        if (k == 0) continue;
        if (n != 0 && k != n) throw DimensionError("intersection of sets with different dimensions");
        n = k;
      }
      return n;
    }
  };
  return std::visit(Visitor{}, *node_);
}

std::string SetSpec::describe() const {
  struct Visitor {
    std::string operator()(const Whole&) const { return "whole"; }
    std::string operator()(const Halfspace& h) const {
      std::ostringstream out;
      out.precision(6);
      out << "halfspace(a=[";
      for (std::size_t i = 0; i < h.a.size(); ++i) out << (i ? "," : "") << h.a[i];
      out << "],b=" << h.b << ")";
      return out.str();
    }
    std::string operator()(const Sublevel& s) const {
      std::ostringstream out;
      out.precision(6);
      out << "sublevel(deg=" << s.q.degree() << ",s=" << s.s << ")";
      return out.str();
    }
    std::string operator()(const Intervals& iv) const {
      std::ostringstream out;
      out.precision(6);
      out << "intervals(";
      for (std::size_t i = 0; i < iv.set.pieces().size(); ++i)
        out << (i ? "u" : "") << "[" << iv.set.pieces()[i].lo << "," << iv.set.pieces()[i].hi << "]";
      out << ")";
      return out.str();
    }
    std::string operator()(const Complement& c) const { return "not(" + c.inner->describe() + ")"; }
    std::string operator()(const Intersection& i) const {
      std::string out = "and(";
      for (std::size_t k = 0; k < i.parts.size(); ++k) out += (k ? "," : "") + i.parts[k].describe();
      return out + ")";
    }
  };
  return std::visit(Visitor{}, *node_);
}

IntervalSet SetSpec::to_intervals(double lo, double hi) const {
  const std::size_t n = dimension();
  if (n > 1) throw DimensionError("to_intervals: set is not one-dimensional");
  struct Visitor {
    double lo, hi;
    IntervalSet operator()(const Whole&) const { return IntervalSet({{lo, hi}}); }
    IntervalSet operator()(const Halfspace& h) const {
      const double a = h.a[0];
      if (a > 0.0) return IntervalSet({{lo, std::min(hi, h.b / a)}});
      if (a < 0.0) return IntervalSet({{std::max(lo, h.b / a), hi}});
      return h.b >= 0.0 ? IntervalSet({{lo, hi}}) : IntervalSet{};
    }
    IntervalSet operator()(const Sublevel& s) const {
      std::vector<double> c = s.q.univariate_coefficients();
      c[0] -= s.s;
      std::vector<double> knots{lo};
      for (double r : univariate::real_roots(c, lo, hi))
        if (r > knots.back()) knots.push_back(r);
      if (hi > knots.back()) knots.push_back(hi);
      std::vector<Interval> out;
      if (knots.size() == 1 && univariate::evaluate(c, lo) <= 0.0) out.push_back({lo, lo});
      for (std::size_t i = 0; i + 1 < knots.size(); ++i)
        if (univariate::evaluate(c, midpoint(knots[i], knots[i + 1])) <= 0.0)
          out.push_back({knots[i], knots[i + 1]});
      return IntervalSet(std::move(out));
    }
    IntervalSet operator()(const Intervals& iv) const { return iv.set.intersect(IntervalSet({{lo, hi}})); }
    IntervalSet operator()(const Complement& c) const { return c.inner->to_intervals(lo, hi).complement(lo, hi); }
    IntervalSet operator()(const Intersection& i) const {
      IntervalSet acc({{lo, hi}});
      for (const auto& p : i.parts) acc = acc.intersect(p.to_intervals(lo, hi));
      return acc;
    }
  };
  return std::visit(Visitor{lo, hi}, *node_);
}

bool indicator(const SetSpec& set, std::span<const double> x) {
  struct Visitor {
    std::span<const double> x;
    bool operator()(const SetSpec::Whole&) const { return true; }
    bool operator()(const SetSpec::Halfspace& h) const {
      require_dimension(h.a.size(), x.size(), "indicator");
      return dot(h.a, x) <= h.b;
    }
    bool operator()(const SetSpec::Sublevel& s) const { return s.q(x) <= s.s; }
    bool operator()(const SetSpec::Intervals& iv) const {
      require_dimension(1, x.size(), "indicator");
      return iv.set.contains(x[0]);
    }
    bool operator()(const SetSpec::Complement& c) const { return !indicator(*c.inner, x); }
    bool operator()(const SetSpec::Intersection& i) const {
      for (const auto& p : i.parts)
        if (!indicator(p, x)) return false;
      return true;
    }
  };
  return std::visit(Visitor{x}, set.node());
}

}  // namespace remez
