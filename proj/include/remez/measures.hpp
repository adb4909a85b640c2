#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "remez/polynomial.hpp"

namespace remez {

/// Sampling or construction failure (unbounded body, empty interior, ...).
class MeasureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kMaxDimension = 12;

/// Row-major block of points in R^n.
class PointSet {
 public:
  PointSet(std::size_t dimension, std::size_t count)
      : dimension_(dimension), coords_(dimension * count, 0.0) {}

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return dimension_ == 0 ? 0 : coords_.size() / dimension_; }
  std::span<const double> operator[](std::size_t i) const noexcept {
    return {coords_.data() + i * dimension_, dimension_};
  }
  std::span<double> operator[](std::size_t i) noexcept {
    return {coords_.data() + i * dimension_, dimension_};
  }

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::size_t dimension_;
  std::vector<double> coords_;
};

enum class MeasureKind {
  uniform_box,
  uniform_ball,
  uniform_simplex,
  uniform_polytope,
  exponential_halfline,
  gaussian_standard,
  interval_uniform,
};

std::string to_string(MeasureKind kind);
MeasureKind measure_kind_from_string(const std::string& name);

enum class SamplerPolicy { direct, hit_and_run };

struct HitAndRunParams {
  std::size_t burn_in = 0;   // 0 selects 1000 * n
  std::size_t thinning = 0;  // 0 selects n
};

/// H-representation {x : A x <= b}.
struct HalfspaceSystem {
  std::vector<std::vector<double>> A;
  std::vector<double> b;
};

/// A log-concave probability measure on R^n.
///
/// Uniform kinds carry a closed body (boundary counts as inside). The
/// standard simplex is {x >= 0, sum x <= 1}; the default box is [-1, 1]^n;
/// the exponential law has density e^{-t} on [0, inf).
class MeasureSpec {
 public:
  static MeasureSpec box(std::size_t n, double lo = -1.0, double hi = 1.0);
  static MeasureSpec box(std::vector<double> lo, std::vector<double> hi);
  static MeasureSpec ball(std::size_t n, double radius = 1.0);
  static MeasureSpec simplex(std::size_t n);
  /// Validates boundedness and finds a Chebyshev centre; throws MeasureError
  /// if the body is unbounded or has empty interior.
  static MeasureSpec polytope(HalfspaceSystem system);
  static MeasureSpec exponential();
  static MeasureSpec gaussian(std::size_t n);
  static MeasureSpec interval(double a, double b);

  MeasureKind kind() const noexcept { return kind_; }
  std::size_t dimension() const noexcept { return dimension_; }
  SamplerPolicy policy() const noexcept { return policy_; }
  const HitAndRunParams& hit_and_run_params() const noexcept { return chain_; }
  MeasureSpec with_policy(SamplerPolicy policy, HitAndRunParams params = {}) const;

  bool has_body() const noexcept;
  bool has_direct_sampler() const noexcept { return kind_ != MeasureKind::uniform_polytope; }
  /// Interval and exponential measures admit exact 1-D integration.
  bool is_exact_1d() const noexcept {
    return kind_ == MeasureKind::interval_uniform || kind_ == MeasureKind::exponential_halfline;
  }
  /// Support of a 1-D measure (upper end may be +inf).
  std::pair<double, double> support_1d() const;

  const std::vector<double>& lower() const noexcept { return lo_; }
  const std::vector<double>& upper() const noexcept { return hi_; }
  double radius() const noexcept { return radius_; }
  /// Halfspace description of the body (box, simplex, polytope, interval).
  const HalfspaceSystem& halfspaces() const noexcept { return system_; }
  /// A point strictly inside the body.
  const std::vector<double>& interior_point() const noexcept { return interior_; }

  std::string describe() const;

 private:
  MeasureSpec(MeasureKind kind, std::size_t n);

  MeasureKind kind_;
  std::size_t dimension_;
  SamplerPolicy policy_ = SamplerPolicy::direct;
  HitAndRunParams chain_;
  std::vector<double> lo_, hi_;
  double radius_ = 0.0;
  HalfspaceSystem system_;
  std::vector<double> interior_;
};

/// Closed-convention membership test for measures with a body.
bool membership(const MeasureSpec& spec, std::span<const double> x);

/// m i.i.d. draws; point i depends only on (seed, stream, i).
PointSet sample_direct(const MeasureSpec& spec, std::size_t m, std::uint64_t seed,
                       std::uint64_t stream = 0);

/// Hit-and-run chain for ball or polytope-representable bodies.
PointSet hit_and_run(const MeasureSpec& spec, std::size_t m, std::uint64_t seed,
                     HitAndRunParams params = {}, std::uint64_t stream = 0);

/// Dispatches on the measure's sampler policy.
PointSet draw(const MeasureSpec& spec, std::size_t m, std::uint64_t seed, std::uint64_t stream = 0);

struct Interval {
  double lo;
  double hi;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Sorted, disjoint, closed intervals.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<Interval> pieces);

  const std::vector<Interval>& pieces() const noexcept { return pieces_; }
  bool empty() const noexcept { return pieces_.empty(); }
  bool contains(double t) const noexcept;
  double length() const noexcept;

  IntervalSet intersect(const IntervalSet& other) const;
  IntervalSet unite(const IntervalSet& other) const;
  /// Closure of the complement within [lo, hi].
  IntervalSet complement(double lo, double hi) const;

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  std::vector<Interval> pieces_;
};

/// Probability of an interval set under a 1-D exact measure.
double interval_measure(const MeasureSpec& spec, const IntervalSet& set);

/// Measurable set A, given as a Boolean combination of closed conditions.
class SetSpec {
 public:
  struct Whole {};
  struct Halfspace {
    std::vector<double> a;
    double b;
  };
  struct Sublevel {
    Polynomial q;
    double s;
  };
  struct Intervals {
    IntervalSet set;
  };
  struct Complement {
    std::shared_ptr<const SetSpec> inner;
  };
  struct Intersection {
    std::vector<SetSpec> parts;
  };
  using Node = std::variant<Whole, Halfspace, Sublevel, Intervals, Complement, Intersection>;

  static SetSpec whole();
  /// {x : <a, x> <= b}
  static SetSpec halfspace(std::vector<double> a, double b);
  /// {x : q(x) <= s}
  static SetSpec sublevel(Polynomial q, double s);
  /// Finite union of intervals (1-D).
  static SetSpec intervals(std::vector<Interval> pieces);
  static SetSpec complement(SetSpec inner);
  static SetSpec intersection(std::vector<SetSpec> parts);

  const Node& node() const noexcept { return *node_; }
  std::string describe() const;

  /// Dimension required of points, or 0 when any dimension is accepted.
  std::size_t dimension() const;

  /// Cached measure estimate, set via with_measure.
  const std::optional<std::pair<double, double>>& cached_measure() const noexcept { return cached_; }
  SetSpec with_measure(double value, double radius) const;

  /// Exact 1-D form of the set within [lo, hi].
  IntervalSet to_intervals(double lo, double hi) const;

 private:
  explicit SetSpec(Node node) : node_(std::make_shared<const Node>(std::move(node))) {}

  std::shared_ptr<const Node> node_;
  std::optional<std::pair<double, double>> cached_;
};

bool indicator(const SetSpec& set, std::span<const double> x);

}  // namespace remez
