#include "remez/certifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

#include "remez/bounds.hpp"
#include "remez/quadrature.hpp"
#include "remez/random.hpp"

namespace remez {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::holds_within_noise: return "holds_within_noise";
    case Verdict::violated: return "violated";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Verdict verdict_from_string(const std::string& s) {
  for (auto v : {Verdict::holds, Verdict::holds_within_noise, Verdict::violated, Verdict::inconclusive})
    if (to_string(v) == s) return v;
  throw std::invalid_argument("unknown verdict '" + s + "'");
}

std::string to_string(Relation r) { return r == Relation::at_least ? "at_least" : "at_most"; }

Relation relation_from_string(const std::string& s) {
  if (s == "at_least") return Relation::at_least;
  if (s == "at_most") return Relation::at_most;
  throw std::invalid_argument("unknown relation '" + s + "'");
}

namespace {

using Clock = std::chrono::steady_clock;

std::string mode_name(EstimateMode m) { return m == EstimateMode::exact ? "exact" : "monte_carlo"; }

Estimate as_estimate(const NormEstimate& e) { return {e.value, e.radius}; }
Estimate as_estimate(const ProbabilityEstimate& e) { return {e.value, e.radius}; }

double signed_margin(Relation r, double lhs, double rhs) { return r == Relation::at_least ? lhs - rhs : rhs - lhs; }

void finish(InequalityReport& r) {
  r.margin = signed_margin(r.relation, r.lhs.value, r.rhs.value);
  r.verdict = judge(r.relation, r.lhs, r.rhs, r.flagged);
}

// Symmetric radius enclosing an asymmetric [lo, hi] around value.
double enclosing_radius(double value, double lo, double hi) { return std::max(hi - value, value - lo); }

std::string instance_key(const std::string& suite, const std::string& cell, std::size_t index, double p, double t) {
  char buf[192];
  std::snprintf(buf, sizeof buf, "%s/%s/i=%05zu/p=%+09.4f/t=%.6e", suite.c_str(), cell.c_str(), index, p, t);
  return buf;
}

double quantile_of_sorted(const std::vector<double>& sorted, double q) {
  const auto idx = static_cast<std::size_t>(std::floor(q * static_cast<double>(sorted.size())));
  return sorted[std::min(sorted.size() - 1, idx)];
}

// Runs jobs 0..count-1 over a pool of worker threads. Job results land in
// per-index slots, so output order never depends on scheduling.
template <class Job>
void run_pool(std::size_t count, unsigned threads, Job&& job) {
  unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        job(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
      }
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

struct Cell {
  MeasureSpec measure;
  std::size_t n;
  unsigned d;
  std::uint64_t tag;
  std::string name;
};

std::vector<Cell> make_cells(const SuiteConfig& config) {
  if (config.degrees.empty()) throw std::invalid_argument("suite: degree grid is empty");
  if (config.exponents.empty()) throw std::invalid_argument("suite: exponent grid is empty");
  if (config.instances == 0 || config.samples == 0) throw std::invalid_argument("suite: budgets must be positive");
  std::vector<MeasureSpec> measures;
  if (config.measure) {
    measures.push_back(*config.measure);
  } else {
    if (config.bodies.empty() || config.dims.empty()) throw std::invalid_argument("suite: measure grid is empty");
    for (auto kind : config.bodies)
      for (std::size_t n : config.dims) {
        switch (kind) {
          case MeasureKind::uniform_box: measures.push_back(MeasureSpec::box(n)); break;
          case MeasureKind::uniform_ball: measures.push_back(MeasureSpec::ball(n)); break;
          case MeasureKind::uniform_simplex: measures.push_back(MeasureSpec::simplex(n)); break;
          case MeasureKind::gaussian_standard: measures.push_back(MeasureSpec::gaussian(n)); break;
          case MeasureKind::exponential_halfline:
            if (n == 1) measures.push_back(MeasureSpec::exponential());
            break;
          case MeasureKind::interval_uniform:
            if (n == 1) measures.push_back(MeasureSpec::interval(0.0, 1.0));
            break;
          case MeasureKind::uniform_polytope:
            throw std::invalid_argument("suite: polytope bodies need an explicit measure with A and b");
        }
      }
  }
  std::vector<Cell> cells;
  for (const auto& m : measures)
    for (unsigned d : config.degrees) {
      const std::uint64_t tag = (static_cast<std::uint64_t>(m.kind()) << 32) |
                                (static_cast<std::uint64_t>(m.dimension()) << 16) | d;
      char buf[96];
      std::snprintf(buf, sizeof buf, "%s/n=%02zu/d=%02u", to_string(m.kind()).c_str(), m.dimension(), d);
      cells.push_back({m, m.dimension(), d, tag, buf});
    }
  return cells;
}

// Everything one random instance needs, evaluated once and shared by all
// exponents (and, for the level-set suite, all thresholds).
struct InstanceData {
  std::vector<double> values;
  std::vector<char> in_set;
  std::string set_name;
  std::uint64_t poly_seed;
  std::uint64_t sample_seed;
};

InstanceData build_instance(const SuiteConfig& config, const Cell& cell, std::size_t index, bool with_set) {
  InstanceData out;
  out.poly_seed = stream_key(config.seed, 0x504F4C59ull ^ cell.tag, index);
  out.sample_seed = stream_key(config.seed, 0x53414D50ull ^ cell.tag, index);
  const Polynomial f = random_polynomial(cell.n, cell.d, out.poly_seed, config.law);
  const PointSet points = draw(cell.measure, config.samples, out.sample_seed, 0);
  out.values = ScalarField(f).evaluate(points);
  if (!with_set) return out;

  const std::size_t families = config.halfspace_quantiles.size() + config.sublevel_quantiles.size();
  if (families == 0) throw std::invalid_argument("suite: set family is empty");
  const std::size_t family = index % families;
  Stream rng(out.poly_seed, 0x534554);  // set parameters
  const PointSet pilot = draw(cell.measure, std::max<std::size_t>(config.pilot, 1), out.sample_seed, 1);
  std::vector<double> scores(pilot.size());
  SetSpec set = SetSpec::whole();
  if (family < config.halfspace_quantiles.size()) {
    std::vector<double> u(cell.n);
    for (auto& x : u) x = rng.normal();
    for (std::size_t i = 0; i < pilot.size(); ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < cell.n; ++j) s += u[j] * pilot[i][j];
      scores[i] = s;
    }
    std::sort(scores.begin(), scores.end());
    set = SetSpec::halfspace(u, quantile_of_sorted(scores, config.halfspace_quantiles[family]));
  } else {
    const double q = config.sublevel_quantiles[family - config.halfspace_quantiles.size()];
    const Polynomial g = random_polynomial(cell.n, 2, rng(), CoefficientLaw::standard_normal);
    for (std::size_t i = 0; i < pilot.size(); ++i) scores[i] = g(pilot[i]);
    std::sort(scores.begin(), scores.end());
    set = SetSpec::sublevel(g, quantile_of_sorted(scores, q));
  }
  out.set_name = set.describe();
  out.in_set.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) out.in_set[i] = indicator(set, points[i]) ? 1 : 0;
  return out;
}

void stamp(InequalityReport& r, const std::string& suite, const Cell& cell, const InstanceData& data,
           std::size_t index, double p, double t) {
  r.suite = suite;
  r.measure = cell.measure.describe();
  r.set = data.set_name;
  r.n = cell.n;
  r.d = cell.d;
  r.index = index;
  r.poly_seed = data.poly_seed;
  r.sample_seed = data.sample_seed;
  r.key = instance_key(suite, cell.name, index, p, t);
}

SuiteResult collect(std::vector<std::vector<InequalityReport>>& per_job, std::vector<std::string>& skipped) {
  SuiteResult out;
  for (auto& v : per_job)
    for (auto& r : v) out.reports.push_back(std::move(r));
  std::sort(out.reports.begin(), out.reports.end(),
            [](const InequalityReport& a, const InequalityReport& b) { return a.key < b.key; });
  for (auto& s : skipped)
    if (!s.empty()) out.skipped.push_back(std::move(s));
  std::sort(out.skipped.begin(), out.skipped.end());
  return out;
}

}  // namespace

Verdict judge(Relation relation, const Estimate& lhs, const Estimate& rhs, bool flagged) {
  const bool at_least = relation == Relation::at_least;
  const bool separated_holds = at_least ? lhs.lower() >= rhs.upper() : lhs.upper() <= rhs.lower();
  const bool separated_violation = at_least ? lhs.upper() < rhs.lower() : lhs.lower() > rhs.upper();
  if (separated_holds) return Verdict::holds;
  if (flagged) return Verdict::inconclusive;
  if (separated_violation) return Verdict::violated;
  const bool point_holds = at_least ? lhs.value >= rhs.value : lhs.value <= rhs.value;
  return point_holds ? Verdict::holds_within_noise : Verdict::inconclusive;
}

double implied_theorem1_constant(double p, unsigned d, double muA, double full_norm, double restricted_norm) {
  if (!(restricted_norm > 0.0)) throw std::invalid_argument("implied constant needs a positive restricted norm");
  const double dd = static_cast<double>(d);
  const double pd = p * dd;
  if (pd < 1.0) return muA * std::pow(std::pow(dd * p + 1.0, -1.0 / p) * full_norm / restricted_norm, 1.0 / dd);
  return muA / pd * std::pow(std::pow(p + 1.0 / dd, -1.0 / p) * full_norm / restricted_norm, 1.0 / dd);
}

InequalityReport theorem1_report(const NormEstimate& full, const NormEstimate& restricted,
                                 const ProbabilityEstimate& mu_a, double p, unsigned d, double c) {
  if (!(mu_a.value > 0.0)) throw EmptyRestriction("theorem1_report: mu(A) estimate is zero");
  InequalityReport r;
  r.relation = Relation::at_least;
  r.p = p;
  r.d = d;
  r.lhs_mode = mode_name(restricted.mode);
  r.mu_a = as_estimate(mu_a);
  r.lhs = as_estimate(restricted);
  r.reference = as_estimate(full);
  r.flagged = full.unreliable || restricted.unreliable;

  const double mu_hi = std::min(1.0, mu_a.upper());
  const double mu_lo = mu_a.lower();
  r.factor = bounds::theorem1_factor(p, d, mu_a.value, c);
  r.branch_low = bounds::theorem1_low_branch(p, d, mu_a.value, c);
  r.branch_high = bounds::theorem1_high_branch(p, d, mu_a.value, c);
  const double value = r.factor * full.value;
  const double hi = bounds::theorem1_factor(p, d, mu_hi, c) * full.upper();
  const double lo = mu_lo > 0.0 ? bounds::theorem1_factor(p, d, mu_lo, c) * std::max(0.0, full.lower()) : 0.0;
  r.rhs = {value, enclosing_radius(value, lo, hi)};

  if (restricted.value > 0.0) {
    const double l_lo = restricted.lower() > 0.0 ? restricted.lower() : restricted.value;
    r.implied_c = implied_theorem1_constant(p, d, mu_hi, full.upper(), l_lo);
  }
  finish(r);
  return r;
}

InequalityReport negative_p_report(const NormEstimate& full, const NormEstimate& restricted,
                                   const ProbabilityEstimate& mu_a, double p, unsigned d) {
  if (!(mu_a.value > 0.0)) throw EmptyRestriction("negative_p_report: mu(A) estimate is zero");
  InequalityReport r;
  r.relation = Relation::at_most;
  r.p = p;
  r.d = d;
  r.lhs_mode = mode_name(full.mode);
  r.mu_a = as_estimate(mu_a);
  r.lhs = as_estimate(full);
  r.reference = as_estimate(restricted);
  r.flagged = full.unreliable || restricted.unreliable;
  const double mu_hi = std::min(1.0, mu_a.upper());
  const double mu_lo = mu_a.lower();
  r.factor = bounds::negative_p_bound(mu_a.value, p);
  const double value = r.factor * restricted.value;
  // muA^{1/p} decreases in muA for p < 0.
  const double hi = mu_lo > 0.0 ? bounds::negative_p_bound(mu_lo, p) * restricted.upper()
                                : std::numeric_limits<double>::infinity();
  const double lo = bounds::negative_p_bound(mu_hi, p) * std::max(0.0, restricted.lower());
  r.rhs = {value, std::isfinite(hi) ? enclosing_radius(value, lo, hi) : std::numeric_limits<double>::max()};
  finish(r);
  return r;
}

InequalityReport cw_report(const ProbabilityEstimate& level, const NormEstimate& full, double t, double p, unsigned d,
                           double c) {
  InequalityReport r;
  r.relation = Relation::at_most;
  r.p = p;
  r.d = d;
  r.t = t;
  r.lhs_mode = mode_name(level.mode);
  r.lhs = as_estimate(level);
  r.reference = as_estimate(full);
  r.flagged = full.unreliable;
  const double value = bounds::cw_levelset_bound(t, full.value, p, d, c);
  // The bound decreases in ||f||_p.
  const double hi = full.lower() > 0.0 ? bounds::cw_levelset_bound(t, full.lower(), p, d, c) : 1.0;
  const double lo = bounds::cw_levelset_bound(t, full.upper(), p, d, c);
  r.rhs = {value, enclosing_radius(value, lo, hi)};
  r.factor = value;
  if (t > 0.0) {
    const double dd = static_cast<double>(d);
    const double k = p * dd >= 1.0 ? p * dd : 1.0;
    r.implied_c = std::min(1.0, level.upper()) * std::pow(full.upper() / t, 1.0 / dd) / k;
  }
  finish(r);
  return r;
}

InequalityReport certify_theorem1(const ScalarField& f, const MeasureSpec& mu, const SetSpec& A, double p, double c,
                                  const Budget& budget, std::uint64_t seed) {
  Budget b = budget;
  b.family_size = std::max<std::size_t>(b.family_size, 3);
  // constants also belong to the degree-1 class
  const unsigned d = std::max(1u, f.degree());
  InequalityReport r;
  if (b.allow_exact && mu.is_exact_1d() && f.univariate() != nullptr && A.dimension() <= 1) {
    const auto full = lp_norm(f, mu, p, b, seed);
    const auto restricted = restricted_lp_norm(f, mu, A, p, b, seed);
    const auto mass = set_measure(mu, A, b, seed);
    r = p > 0.0 ? theorem1_report(full, restricted, mass, p, d, c)
                : negative_p_report(full, restricted, mass, p, d);
  } else {
    check_exponent(p, d);
    const double z = z_value(b.confidence, b.family_size);
    const PointSet points = draw(mu, b.samples, seed);
    const auto values = f.evaluate(points);
    std::vector<double> inside;
    for (std::size_t i = 0; i < points.size(); ++i)
      if (indicator(A, points[i])) inside.push_back(values[i]);
    if (inside.empty()) throw EmptyRestriction("no sample fell in " + A.describe());
    const auto mass = binomial_estimate(inside.size(), values.size(), z);
    const auto full = lp_from_values(values, p, z);
    const auto restricted = lp_from_values(inside, p, z);
    r = p > 0.0 ? theorem1_report(full, restricted, mass, p, d, c)
                : negative_p_report(full, restricted, mass, p, d);
  }
  r.suite = p > 0.0 ? "theorem1" : "negative_p";
  r.measure = mu.describe();
  r.set = A.describe();
  r.n = mu.dimension();
  r.sample_seed = seed;
  r.key = instance_key(r.suite, "single", 0, p, 0.0);
  return r;
}

InequalityReport certify_cw(const ScalarField& f, const MeasureSpec& mu, double t, double p, double c,
                            const Budget& budget, std::uint64_t seed) {
  Budget b = budget;
  b.family_size = std::max<std::size_t>(b.family_size, 2);
  const auto full = lp_norm(f, mu, p, b, seed);
  const auto level = levelset_measure(f, mu, t, b, seed);
  InequalityReport r = cw_report(level, full, t, p, std::max(1u, f.degree()), c);
  r.suite = "cw";
  r.measure = mu.describe();
  r.n = mu.dimension();
  r.sample_seed = seed;
  r.key = instance_key(r.suite, "single", 0, p, t);
  return r;
}

SuiteResult run_theorem1_suite(const SuiteConfig& config) {
  const auto cells = make_cells(config);
  const std::size_t jobs = cells.size() * config.instances;
  std::vector<std::vector<InequalityReport>> per_job(jobs);
  std::vector<std::string> skipped(jobs);
  const double z = z_value(config.confidence, 3);

  run_pool(jobs, config.threads, [&](std::size_t job) {
    const Cell& cell = cells[job / config.instances];
    const std::size_t index = job % config.instances;
    const auto start = Clock::now();
    const InstanceData data = build_instance(config, cell, index, true);
    std::vector<double> inside;
    for (std::size_t i = 0; i < data.values.size(); ++i)
      if (data.in_set[i]) inside.push_back(data.values[i]);
    if (inside.empty()) {
      skipped[job] = instance_key("theorem1", cell.name, index, 0.0, 0.0) + ": no sample fell in " + data.set_name;
      return;
    }
    const auto mass = binomial_estimate(inside.size(), data.values.size(), z);
    for (double p : config.exponents) {
      if (p == 0.0) continue;
      if (p < 0.0 && p * cell.d <= -1.0) {
        skipped[job] += instance_key("negative_p", cell.name, index, p, 0.0) + ": p <= -1/d; ";
        continue;
      }
      try {
        const auto full = lp_from_values(data.values, p, z);
        const auto restricted = lp_from_values(inside, p, z);
        InequalityReport r = p > 0.0 ? theorem1_report(full, restricted, mass, p, cell.d, config.c)
                                     : negative_p_report(full, restricted, mass, p, cell.d);
        stamp(r, p > 0.0 ? "theorem1" : "negative_p", cell, data, index, p, 0.0);
        r.p = p;
        per_job[job].push_back(std::move(r));
      } catch (const EstimationError& e) {
        skipped[job] += instance_key("theorem1", cell.name, index, p, 0.0) + ": " + e.what() + "; ";
      }
    }
    if (!config.fixed_clock) {
      const double secs = std::chrono::duration<double>(Clock::now() - start).count();
      for (auto& r : per_job[job]) r.wall_time = secs / static_cast<double>(per_job[job].size());
    }
  });
  return collect(per_job, skipped);
}

SuiteResult run_cw_suite(const SuiteConfig& config) {
  const auto cells = make_cells(config);
  if (config.thresholds == 0) throw std::invalid_argument("suite: threshold grid is empty");
  const std::size_t jobs = cells.size() * config.instances;
  std::vector<std::vector<InequalityReport>> per_job(jobs);
  std::vector<std::string> skipped(jobs);
  const double z = z_value(config.confidence, 2);

  // Thresholds sit at geometrically spaced quantile levels of |f|.
  std::vector<double> levels(config.thresholds);
  for (std::size_t k = 0; k < levels.size(); ++k)
    levels[k] = levels.size() == 1 ? 0.1 : 1e-3 * std::pow(900.0, static_cast<double>(k) / static_cast<double>(levels.size() - 1));

  run_pool(jobs, config.threads, [&](std::size_t job) {
    const Cell& cell = cells[job / config.instances];
    const std::size_t index = job % config.instances;
    const auto start = Clock::now();
    InstanceData data = build_instance(config, cell, index, false);
    std::vector<double> sorted = data.values;
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> thresholds;
    for (double q : levels) thresholds.push_back(quantile_of_sorted(sorted, q));
    const auto curve = levelset_curve(sorted, thresholds, z);
    for (double p : config.exponents) {
      if (!(p > 0.0)) continue;
      try {
        const auto full = lp_from_values(data.values, p, z);
        if (!(full.value > 0.0)) throw EstimationError("||f||_p is zero");
        for (std::size_t k = 0; k < thresholds.size(); ++k) {
          InequalityReport r = cw_report(curve[k], full, thresholds[k], p, cell.d, config.c);
          stamp(r, "cw", cell, data, index, p, thresholds[k]);
          r.key = instance_key("cw", cell.name, index, p, static_cast<double>(k));
          per_job[job].push_back(std::move(r));
        }
      } catch (const EstimationError& e) {
        skipped[job] += instance_key("cw", cell.name, index, p, 0.0) + ": " + e.what() + "; ";
      }
    }
    if (!config.fixed_clock) {
      const double secs = std::chrono::duration<double>(Clock::now() - start).count();
      for (auto& r : per_job[job]) r.wall_time = secs / static_cast<double>(per_job[job].size());
    }
  });
  return collect(per_job, skipped);
}

CalibratedRun run_theorem1_calibrated(const SuiteConfig& config) {
  CalibratedRun out;
  out.result = run_theorem1_suite(config);
  out.c_used = config.c;
  out.fitted_c = fit_empirical_constant(out.result.reports);
  if (out.fitted_c > config.c) {
    SuiteConfig again = config;
    again.c = 2.0 * out.fitted_c;
    out.result = run_theorem1_suite(again);
    out.c_used = again.c;
    out.rerun = true;
  }
  return out;
}

GridSup grid_sup(const std::function<double(double)>& g, const IntervalSet& where) {
  GridSup best;
  best.value = -std::numeric_limits<double>::infinity();
  best.converged = true;
  for (const auto& piece : where.pieces()) {
    if (piece.lo == piece.hi) {
      const double v = g(piece.lo);
      if (v > best.value) best = {v, piece.lo, best.converged};
      continue;
    }
    auto refine = [&](std::size_t points) {
      const double h = (piece.hi - piece.lo) / static_cast<double>(points - 1);
      std::size_t arg = 0;
      double top = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < points; ++i) {
        const double x = i + 1 == points ? piece.hi : piece.lo + h * static_cast<double>(i);
        const double v = g(x);
        if (v > top) {
          top = v;
          arg = i;
        }
      }
      // Golden-section polish in the bracketing cells.
      double a = piece.lo + h * static_cast<double>(arg == 0 ? 0 : arg - 1);
      double b = std::min(piece.hi, piece.lo + h * static_cast<double>(arg + 1));
      double xbest = arg + 1 == points ? piece.hi : piece.lo + h * static_cast<double>(arg);
      constexpr double kPhi = 0.6180339887498949;
      double x1 = b - kPhi * (b - a), x2 = a + kPhi * (b - a);
      double f1 = g(x1), f2 = g(x2);
      for (int it = 0; it < 80 && b - a > 1e-15 * (1.0 + std::abs(a)); ++it) {
        if (f1 < f2) {
          a = x1;
          x1 = x2;
          f1 = f2;
          x2 = a + kPhi * (b - a);
          f2 = g(x2);
        } else {
          b = x2;
          x2 = x1;
          f2 = f1;
          x1 = b - kPhi * (b - a);
          f1 = g(x1);
        }
      }
      if (f1 > top) {
        top = f1;
        xbest = x1;
      }
      if (f2 > top) {
        top = f2;
        xbest = x2;
      }
      return std::make_pair(top, xbest);
    };
    std::size_t points = 257;
    auto current = refine(points);
    bool converged = false;
    while (points < (1u << 15)) {
      points = 2 * points - 1;
      const auto next = refine(points);
      const bool stable = std::abs(next.first - current.first) <= 1e-10 * std::max(std::abs(next.first), 1e-300);
      current = next.first >= current.first ? next : current;
      if (stable) {
        converged = true;
        break;
      }
    }
    best.converged = best.converged && converged;
    if (current.first > best.value) {
      best.value = current.first;
      best.argmax = current.second;
    }
  }
  return best;
}

InequalityReport classical_report(const std::function<double(double)>& g, unsigned d, const Interval& delta,
                                  const IntervalSet& A, double R) {
  const IntervalSet inside = A.intersect(IntervalSet({delta}));
  const double lambda = inside.length() / (delta.hi - delta.lo);
  InequalityReport r;
  r.relation = Relation::at_most;
  r.d = d;
  r.n = 1;
  r.lhs_mode = "grid";
  r.mu_a = {lambda, 0.0};
  const GridSup whole = grid_sup(g, IntervalSet({delta}));
  const GridSup sub = grid_sup(g, inside);
  const double bound = bounds::classical_remez_bound(d, lambda, R);
  r.factor = bound;
  r.lhs = {whole.value, 0.0};
  r.reference = {sub.value, 0.0};
  r.rhs = {bound * sub.value, 0.0};
  r.flagged = !(whole.converged && sub.converged);
  if (sub.value > 0.0 && d > 0) r.implied_c = lambda * std::pow(whole.value / sub.value, 1.0 / static_cast<double>(d));
  finish(r);
  return r;
}

namespace {

IntervalSet random_subset(Stream& rng, const Interval& delta, double min_fraction, std::size_t max_pieces) {
  const std::size_t k = 1 + rng.below(std::max<std::size_t>(max_pieces, 1));
  const double width = delta.hi - delta.lo;
  const double lambda = rng.uniform(min_fraction, 1.0);
  auto split = [&](double total, std::size_t parts) {
    std::vector<double> cuts{0.0, 1.0};
    for (std::size_t i = 0; i + 1 < parts; ++i) cuts.push_back(rng.uniform());
    std::sort(cuts.begin(), cuts.end());
    std::vector<double> out;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) out.push_back(total * (cuts[i + 1] - cuts[i]));
    return out;
  };
  const auto lengths = split(lambda * width, k);
  const auto gaps = split((1.0 - lambda) * width, k + 1);
  std::vector<Interval> pieces;
  double cursor = delta.lo;
  for (std::size_t i = 0; i < k; ++i) {
    cursor += gaps[i];
    pieces.push_back({cursor, std::min(delta.hi, cursor + lengths[i])});
    cursor += lengths[i];
  }
  return IntervalSet(std::move(pieces));
}

}  // namespace

SuiteResult run_classical_suite(const ClassicalConfig& config) {
  if (config.min_fraction <= 0.0 || config.min_fraction > 1.0)
    throw std::invalid_argument("classical suite: min_fraction must lie in (0, 1]");
  const std::size_t total = config.scalar_instances + config.vector_instances + config.trig_instances;
  std::vector<std::vector<InequalityReport>> per_job(total);
  std::vector<std::string> skipped(total);

  run_pool(total, 0, [&](std::size_t job) {
    const auto start = Clock::now();
    InequalityReport r;
    if (job < config.scalar_instances) {
      const std::size_t i = job;
      Stream rng(config.seed, 0x5343414C, i);
      const unsigned d = 1 + static_cast<unsigned>(rng.below(config.max_degree));
      const auto law = i % 3 == 2 ? CoefficientLaw::spiked : CoefficientLaw::standard_normal;
      const std::uint64_t poly_seed = rng();
      const Polynomial f = random_polynomial(1, d, poly_seed, law);
      const double a = rng.uniform(-2.0, 1.0);
      const Interval delta{a, a + rng.uniform(0.5, 3.0)};
      const IntervalSet A = random_subset(rng, delta, config.min_fraction, config.max_pieces);
      const auto coeffs = f.univariate_coefficients();
      r = classical_report([&](double t) { return std::abs(univariate::evaluate(coeffs, t)); }, f.degree(), delta, A,
                           config.R);
      r.suite = "classical";
      r.index = i;
      r.poly_seed = poly_seed;
      r.set = SetSpec::intervals(A.pieces()).describe();
      r.measure = "interval_uniform(n=1,[" + std::to_string(delta.lo) + "," + std::to_string(delta.hi) + "])";
      r.key = instance_key("classical", "scalar", i, 0.0, 0.0);
    } else if (job < config.scalar_instances + config.vector_instances) {
      const std::size_t i = job - config.scalar_instances;
      Stream rng(config.seed, 0x56454354, i);
      const std::size_t m = 1 + rng.below(config.max_components);
      std::vector<Polynomial> comps;
      const std::uint64_t poly_seed = rng();
      for (std::size_t k = 0; k < m; ++k)
        comps.push_back(random_polynomial(1, 1 + static_cast<unsigned>(rng.below(config.max_degree)),
                                          stream_key(poly_seed, k)));
      const CodomainNorm norm = std::array{CodomainNorm::euclidean, CodomainNorm::sup, CodomainNorm::one}[i % 3];
      const PolynomialMap f(std::move(comps), norm);
      const double a = rng.uniform(-2.0, 1.0);
      const Interval delta{a, a + rng.uniform(0.5, 3.0)};
      const IntervalSet A = random_subset(rng, delta, config.min_fraction, config.max_pieces);
      r = classical_report(
          [&](double t) {
            const double x[1] = {t};
            return eval_map_norm(f, x);
          },
          f.degree(), delta, A, config.R);
      r.suite = "vector";
      r.index = i;
      r.poly_seed = poly_seed;
      r.set = SetSpec::intervals(A.pieces()).describe();
      static const char* names[] = {"euclidean", "sup", "one"};
      r.measure = "interval_uniform(n=1,[" + std::to_string(delta.lo) + "," + std::to_string(delta.hi) +
                  "]),m=" + std::to_string(m) + ",norm=" + names[i % 3];
      r.key = instance_key("vector", "map", i, 0.0, 0.0);
    } else {
      const std::size_t i = job - config.scalar_instances - config.vector_instances;
      Stream rng(config.seed, 0x54524947, i);
      const unsigned d = 1 + static_cast<unsigned>(rng.below(config.trig_max_degree));
      const std::size_t n = std::max<std::size_t>(config.trig_dimension, 1);
      std::vector<std::vector<double>> functionals(d, std::vector<double>(n));
      for (auto& l : functionals)
        for (auto& x : l) x = 2.0 * rng.normal();
      const TrigPolynomial f(std::move(functionals));
      std::vector<double> base(n), dir(n), point(n);
      for (auto& x : base) x = rng.normal();
      for (auto& x : dir) x = rng.normal();
      const Interval delta{-1.0, 1.0};
      const IntervalSet A = random_subset(rng, delta, config.min_fraction, config.max_pieces);
      r = classical_report(
          [&](double t) {
            for (std::size_t k = 0; k < n; ++k) point[k] = base[k] + t * dir[k];
            return eval_trig_modulus(f, point);
          },
          d, delta, A, config.trig_R);
      r.suite = "trig";
      r.index = i;
      r.n = n;
      r.set = SetSpec::intervals(A.pieces()).describe();
      r.measure = "line_in_R" + std::to_string(n) + ",[-1,1]";
      r.key = instance_key("trig", "line", i, 0.0, 0.0);
    }
    if (!config.fixed_clock) r.wall_time = std::chrono::duration<double>(Clock::now() - start).count();
    per_job[job].push_back(std::move(r));
  });
  return collect(per_job, skipped);
}

TightnessResult tightness_exponential(unsigned d, double eps, double c, double tol) {
  if (d < 1) throw std::invalid_argument("tightness: d must be at least 1");
  if (!(eps > 0.0)) throw std::invalid_argument("tightness: eps must be positive");
  TightnessResult out;
  out.d = d;
  out.eps = eps;
  const double dd = static_cast<double>(d);
  QuadratureOptions opt;
  opt.rel_tol = tol;
  const auto weight = [dd](double t) { return std::pow(t, dd) * std::exp(-t); };
  out.full_norm = quadrature_1d(weight, 0.0, std::numeric_limits<double>::infinity(), opt);
  out.restricted_integral = quadrature_1d(weight, 0.0, eps, opt);
  out.factorial = std::tgamma(dd + 1.0);
  out.factorial_lower = std::pow(dd / std::exp(1.0), dd);
  out.upper_bound = std::pow(eps, dd + 1.0) / (dd + 1.0);
  out.mu_a = -std::expm1(-eps);
  out.restricted_norm = out.restricted_integral / out.mu_a;
  out.achieved_ratio = out.restricted_norm / out.full_norm;
  out.mass_ratio = out.restricted_integral / out.factorial;
  out.predicted_factor = bounds::theorem1_factor(1.0, d, out.mu_a, c);
  out.invariants_hold = out.restricted_integral <= out.upper_bound && out.factorial >= out.factorial_lower;
  return out;
}

double fit_empirical_constant(const std::vector<InequalityReport>& reports) {
  double best = 0.0;
  std::size_t used = 0;
  for (const auto& r : reports) {
    if (r.suite != "theorem1" || !(r.p > 0.0)) continue;
    if (!(r.lhs.value > 0.0)) throw std::invalid_argument("fit_empirical_constant: instance " + r.key + " has lhs <= 0");
    const double mu_hi = std::min(1.0, r.mu_a.upper());
    const double l_lo = r.lhs.lower() > 0.0 ? r.lhs.lower() : r.lhs.value;
    best = std::max(best, implied_theorem1_constant(r.p, r.d, mu_hi, r.reference.upper(), l_lo));
    ++used;
  }
  if (used == 0) throw std::invalid_argument("fit_empirical_constant: no integral-inequality instances");
  return best;
}

ExtremalResult search_extremal(const ExtremalConfig& config) {
  if (config.iterations == 0 || config.restarts == 0 || config.samples == 0)
    throw std::invalid_argument("search_extremal: budgets must be positive");
  if (!(config.p > 0.0)) throw std::invalid_argument("search_extremal: p must be positive");
  ExtremalResult out;
  const unsigned dd = std::max(config.d, 1u);

  if (config.family == ExtremalFamily::monomial) {
    if (!config.measure.is_exact_1d()) throw std::invalid_argument("monomial search needs a 1-D exact measure");
    const auto [lo, hi] = config.measure.support_1d();
    const IntervalSet whole({{lo, hi}});
    const IntervalSet region({{lo, std::min(hi, lo + config.eps)}});
    out.set = SetSpec::intervals(region.pieces());
    out.mu_a = interval_measure(config.measure, region);
    double best_full = 1.0, best_restricted = 1.0;
    for (unsigned k = 0; k <= config.d; ++k) {
      std::vector<double> c(k + 1, 0.0);
      c[k] = 1.0;
      const Polynomial f = Polynomial::univariate(c);
      const double full = exact_lp_norm(f, config.measure, config.p, whole).value;
      const double restricted = exact_lp_norm(f, config.measure, config.p, region).value;
      const double ratio = full / restricted;
      if (k == 0 || ratio > out.ratio) {
        out.ratio = ratio;
        out.best = f;
        out.best_monomial_degree = k;
        best_full = full;
        best_restricted = restricted;
      }
      out.trace.push_back(out.ratio);
    }
    out.implied_c = implied_theorem1_constant(config.p, dd, out.mu_a, best_full, best_restricted);
    return out;
  }

  const std::size_t n = config.measure.dimension();
  const auto monomials = monomials_up_to(n, config.d);
  const std::size_t terms = monomials.size();
  const PointSet points = draw(config.measure, config.samples, config.seed, 0x53524348);
  const std::size_t m = points.size();
  // Monomial values at every sample, so candidate evaluation is a matvec.
  std::vector<double> basis(m * terms);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < terms; ++j) {
      double v = 1.0;
      for (std::size_t k = 0; k < n; ++k)
        for (unsigned e = 0; e < monomials[j][k]; ++e) v *= points[i][k];
      basis[i * terms + j] = v;
    }

  struct Evaluation {
    double ratio = 0.0, full = 0.0, restricted = 0.0, mu_a = 0.0, cut = 0.0;
  };
  std::vector<double> values(m), scores(m), sorted(m), inside;
  inside.reserve(m);
  auto evaluate = [&](const std::vector<double>& coeffs, const std::vector<double>& dir) {
    for (std::size_t i = 0; i < m; ++i) {
      double v = 0.0, s = 0.0;
      for (std::size_t j = 0; j < terms; ++j) v += basis[i * terms + j] * coeffs[j];
      for (std::size_t k = 0; k < n; ++k) s += dir[k] * points[i][k];
      values[i] = std::abs(v);
      scores[i] = s;
    }
    sorted = scores;
    const std::size_t kth = std::min(m - 1, static_cast<std::size_t>(std::floor(config.set_fraction * static_cast<double>(m))));
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(kth), sorted.end());
    Evaluation e;
    e.cut = sorted[kth];
    inside.clear();
    for (std::size_t i = 0; i < m; ++i)
      if (scores[i] <= e.cut) inside.push_back(values[i]);
    e.full = lp_from_values(values, config.p, 0.0).value;
    e.restricted = lp_from_values(inside, config.p, 0.0).value;
    e.mu_a = static_cast<double>(inside.size()) / static_cast<double>(m);
    e.ratio = e.restricted > 0.0 ? e.full / e.restricted : 0.0;
    return e;
  };

  Stream rng(config.seed, 0x4558544D);
  std::vector<double> best_coeffs, best_dir;
  Evaluation best_eval;
  best_eval.ratio = -1.0;
  for (std::size_t restart = 0; restart < config.restarts; ++restart) {
    std::vector<double> coeffs(terms, 0.0), dir(n, 0.0);
    if (restart == 0) {
      coeffs[0] = 1.0;  // constant polynomial
      dir[0] = 1.0;
    } else {
      for (auto& c : coeffs) c = rng.normal();
      for (auto& x : dir) x = rng.normal();
    }
    Evaluation current = evaluate(coeffs, dir);
    if (current.ratio > best_eval.ratio) {
      best_eval = current;
      best_coeffs = coeffs;
      best_dir = dir;
    }
    if (restart == 0) out.trace.push_back(best_eval.ratio);
    double step = config.step;
    for (std::size_t it = 0; it < config.iterations; ++it) {
      double scale = 0.0;
      for (double c : coeffs) scale += c * c;
      scale = std::sqrt(scale / static_cast<double>(terms));
      auto cand = coeffs;
      for (auto& c : cand) c += step * scale * rng.normal();
      auto cand_dir = dir;
      for (auto& x : cand_dir) x += step * rng.normal();
      if (std::all_of(cand_dir.begin(), cand_dir.end(), [](double x) { return x == 0.0; })) cand_dir = dir;
      const Evaluation e = evaluate(cand, cand_dir);
      if (e.ratio > current.ratio) {
        current = e;
        coeffs = std::move(cand);
        dir = std::move(cand_dir);
      }
      if (current.ratio > best_eval.ratio) {
        best_eval = current;
        best_coeffs = coeffs;
        best_dir = dir;
      }
      out.trace.push_back(best_eval.ratio);
      step *= config.decay;
    }
  }
  std::map<Exponent, double> best_terms;
  for (std::size_t j = 0; j < terms; ++j) best_terms[monomials[j]] = best_coeffs[j];
  out.best = Polynomial(n, std::move(best_terms));
  out.set = SetSpec::halfspace(best_dir, best_eval.cut);
  out.ratio = best_eval.ratio;
  out.mu_a = best_eval.mu_a;
  out.implied_c = implied_theorem1_constant(config.p, dd, out.mu_a, best_eval.full, best_eval.restricted);
  return out;
}

}  // namespace remez
