// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 on any FAIL.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "remez/certifier.hpp"
#include "remez/config.hpp"
#include "remez/experiment.hpp"
#include "remez/measures.hpp"
#include "remez/norms.hpp"
#include "remez/report.hpp"

using namespace remez;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::size_t count_verdict(const std::vector<InequalityReport>& rs, Verdict v) {
  return static_cast<std::size_t>(std::count_if(rs.begin(), rs.end(), [v](const auto& r) { return r.verdict == v; }));
}

// Shared between criteria 2 and 3.
double g_c_fixed = 4.0;

Outcome tightness() {
  const auto t0 = Clock::now();
  double worst_rel = 0.0;
  bool ok = true;
  for (unsigned d = 1; d <= 10; ++d) {
    for (double eps : {0.1, 0.5, 1.0}) {
      const auto t = tightness_exponential(d, eps, 4.0, 1e-12);
      worst_rel = std::max(worst_rel, std::abs(t.full_norm - t.factorial) / t.factorial);
      ok = ok && t.factorial >= t.factorial_lower && t.restricted_integral <= t.upper_bound;
    }
  }
  const double secs = seconds_since(t0);
  ok = ok && worst_rel <= 1e-9 && secs < 1.0;
  return {ok, fmt("max rel err of ||t^d||_1 vs d! = %.2e, runtime %.3f s", worst_rel, secs)};
}

Outcome theorem1_suite() {
  const auto t0 = Clock::now();
  std::vector<double> fitted;
  std::size_t violated = 0, records = 0, reruns = 0;
  double c_used = 4.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    SuiteConfig cfg;
    cfg.seed = seed;
    cfg.c = 4.0;
    cfg.fixed_clock = true;
    const auto run = run_theorem1_calibrated(cfg);
    fitted.push_back(run.fitted_c);
    violated += count_verdict(run.result.reports, Verdict::violated);
    records += run.result.reports.size();
    reruns += run.rerun ? 1 : 0;
    c_used = std::max(c_used, run.c_used);
    std::printf("  seed %llu: %zu records, fitted c %.4f, c used %.4f, %zu violated\n",
                static_cast<unsigned long long>(seed), run.result.reports.size(), run.fitted_c, run.c_used,
                count_verdict(run.result.reports, Verdict::violated));
    std::fflush(stdout);
  }
  const double secs = seconds_since(t0);
  const auto [lo, hi] = std::minmax_element(fitted.begin(), fitted.end());
  double mean = 0.0;
  for (double f : fitted) mean += f / static_cast<double>(fitted.size());
  const double spread = (*hi - *lo) / mean;
  const bool finite = std::all_of(fitted.begin(), fitted.end(), [](double f) { return std::isfinite(f); });
  g_c_fixed = c_used;
  const bool ok = violated == 0 && finite && *hi <= 4.0 && spread <= 0.25 && secs <= 900.0;
  return {ok, fmt("%zu records over 5 seeds, %zu violated, fitted c in [%.4f, %.4f], spread %.1f%%, %zu reruns, "
                  "%.1f s",
                  records, violated, *lo, *hi, 100.0 * spread, reruns, secs)};
}

Outcome cw_suite() {
  const auto t0 = Clock::now();
  SuiteConfig cfg;
  cfg.seed = 1;
  cfg.c = g_c_fixed;
  cfg.thresholds = 8;
  cfg.fixed_clock = true;
  const auto res = run_cw_suite(cfg);
  const std::size_t violated = count_verdict(res.reports, Verdict::violated);
  std::map<std::string, std::vector<const InequalityReport*>> curves;
  for (const auto& r : res.reports) curves[r.key.substr(0, r.key.find("/t="))].push_back(&r);
  std::size_t non_monotone = 0, short_curves = 0;
  for (auto& [key, pts] : curves) {
    std::sort(pts.begin(), pts.end(), [](auto* a, auto* b) { return a->t < b->t; });
    if (pts.size() != 8) ++short_curves;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
      if (pts[i + 1]->lhs.value < pts[i]->lhs.value) ++non_monotone;
  }
  const double secs = seconds_since(t0);
  const bool ok = violated == 0 && non_monotone == 0 && short_curves == 0 && !res.reports.empty();
  return {ok, fmt("%zu records, %zu curves at c = %.4f, %zu violated, %zu monotonicity breaks, %zu curves without 8 "
                  "thresholds, %.1f s",
                  res.reports.size(), curves.size(), g_c_fixed, violated, non_monotone, short_curves, secs)};
}

Outcome classical_suite() {
  const auto t0 = Clock::now();
  ClassicalConfig cfg;
  cfg.scalar_instances = 500;
  cfg.vector_instances = 200;
  cfg.trig_instances = 100;
  cfg.trig_R = 316.0;
  cfg.fixed_clock = true;
  const auto res = run_classical_suite(cfg);
  std::map<std::string, std::size_t> per_suite;
  std::size_t failures = 0;
  for (const auto& r : res.reports) {
    ++per_suite[r.suite];
    if (!(r.lhs.value <= r.rhs.value) || r.verdict == Verdict::violated) ++failures;
  }
  const double secs = seconds_since(t0);
  const bool ok = failures == 0 && per_suite["classical"] == 500 && per_suite["vector"] == 200 &&
                  per_suite["trig"] == 100 && secs <= 120.0;
  return {ok, fmt("scalar %zu, vector %zu, trig %zu instances, %zu exceed the bound, %.2f s", per_suite["classical"],
                  per_suite["vector"], per_suite["trig"], failures, secs)};
}

Outcome norm_oracles() {
  Budget exact;
  Budget mc;
  mc.allow_exact = false;
  mc.samples = 100000;
  const double z = z_value(mc.confidence, mc.family_size);
  const double t1[] = {0.0, 1.0};
  const double t2[] = {0.0, 0.0, 1.0};
  const double t3[] = {0.0, 0.0, 0.0, 1.0};
  const ScalarField lin(Polynomial::univariate(t1)), sq(Polynomial::univariate(t2)), cube(Polynomial::univariate(t3));
  const auto unit = MeasureSpec::interval(0.0, 1.0);
  const auto sym = MeasureSpec::interval(-1.0, 1.0);
  const auto expo = MeasureSpec::exponential();
  const auto upper_half = SetSpec::intervals({{0.5, 1.0}});

  struct Case {
    const char* name;
    double oracle;
    std::function<std::pair<double, double>(const Budget&)> run;  // value, radius
  };
  const std::vector<Case> cases{
      {"||t||_1 on U[0,1]", 0.5,
       [&](const Budget& b) {
         const auto e = lp_norm(lin, unit, 1.0, b, 101);
         return std::pair{e.value, e.radius};
       }},
      {"||t||_1 on [1/2,1]", 0.75,
       [&](const Budget& b) {
         const auto e = restricted_lp_norm(lin, unit, upper_half, 1.0, b, 102);
         return std::pair{e.value, e.radius};
       }},
      {"||t||_0 on U[0,1]", std::exp(-1.0),
       [&](const Budget& b) {
         const auto e = lp_norm(lin, unit, 0.0, b, 103);
         return std::pair{e.value, e.radius};
       }},
      {"||t^3||_1 exponential", 6.0,
       [&](const Budget& b) {
         const auto e = lp_norm(cube, expo, 1.0, b, 104);
         return std::pair{e.value, e.radius};
       }},
      {"mu(t^2 <= 1/4) on U[-1,1]", 0.5,
       [&](const Budget& b) {
         const auto e = levelset_measure(sq, sym, 0.25, b, 105);
         return std::pair{e.value, e.radius};
       }},
  };
  bool ok = true;
  std::string detail;
  for (const auto& c : cases) {
    const auto [ev, er] = c.run(exact);
    const auto [mv, mr] = c.run(mc);
    const double se = std::sqrt(std::pow(er / z, 2) + std::pow(mr / z, 2));
    const double dist = std::abs(ev - mv) / se;
    const bool exact_ok = std::abs(ev - c.oracle) <= 1e-9 * std::max(1.0, c.oracle);
    ok = ok && exact_ok && dist <= 4.0;
    std::printf("  %-28s exact %.12f  mc %.6f  |diff| = %.2f SE\n", c.name, ev, mv, dist);
  }
  return {ok, "five oracles, exact path to 1e-9 and Monte Carlo within 4 combined standard errors"};
}

Outcome negative_p() {
  SuiteConfig cfg;
  cfg.bodies = {MeasureKind::uniform_box};
  cfg.dims = {1, 2, 3, 4};
  cfg.degrees = {1};
  cfg.exponents = {-0.1, -0.25};
  cfg.instances = 25;
  cfg.seed = 7;
  cfg.fixed_clock = true;
  const auto res = run_theorem1_suite(cfg);
  std::map<double, std::size_t> total, passed;
  for (const auto& r : res.reports) {
    ++total[r.p];
    if (r.lhs.value <= r.rhs.value + r.lhs.radius + r.rhs.radius) ++passed[r.p];
  }
  const bool ok = total[-0.1] == 100 && total[-0.25] == 100 && passed[-0.1] == 100 && passed[-0.25] == 100;
  return {ok, fmt("p = -0.1: %zu/%zu, p = -0.25: %zu/%zu, %zu skipped", passed[-0.1], total[-0.1], passed[-0.25],
                  total[-0.25], res.skipped.size())};
}

// Sample mean and its standard error for each statistic.
struct Moments {
  std::vector<double> mean, se;
};

Moments moments(const PointSet& pts, const std::vector<std::function<double(std::span<const double>)>>& stats,
                double ess_factor = 1.0) {
  Moments m;
  const double n = static_cast<double>(pts.size());
  for (const auto& s : stats) {
    double sum = 0.0, sq = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double v = s(pts[i]);
      sum += v;
      sq += v * v;
    }
    const double mu = sum / n;
    const double var = std::max(sq / n - mu * mu, 0.0);
    m.mean.push_back(mu);
    m.se.push_back(std::sqrt(var / (n / ess_factor)));
  }
  return m;
}

Outcome samplers() {
  constexpr std::size_t m = 200000;
  constexpr std::size_t n = 3;
  const auto coord = [](std::size_t j) { return [j](std::span<const double> x) { return x[j]; }; };
  const auto coord_sq = [](std::size_t j) { return [j](std::span<const double> x) { return x[j] * x[j]; }; };
  const auto norm2 = [](std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
  };
  std::vector<std::function<double(std::span<const double>)>> stats;
  for (std::size_t j = 0; j < n; ++j) stats.push_back(coord(j));
  for (std::size_t j = 0; j < n; ++j) stats.push_back(coord_sq(j));
  stats.push_back(norm2);

  const double nd = static_cast<double>(n);
  struct Body {
    const char* name;
    MeasureSpec spec;
    double mean, second, norm2;
  };
  const std::vector<Body> bodies{
      {"box", MeasureSpec::box(n), 0.0, 1.0 / 3.0, nd / 3.0},
      {"ball", MeasureSpec::ball(n), 0.0, 1.0 / (nd + 2.0), nd / (nd + 2.0)},
      {"simplex", MeasureSpec::simplex(n), 1.0 / (nd + 1.0), 2.0 / ((nd + 1.0) * (nd + 2.0)),
       2.0 * nd / ((nd + 1.0) * (nd + 2.0))},
  };
  bool ok = true;
  double worst = 0.0, worst_hr = 0.0;
  for (const auto& b : bodies) {
    const auto direct = moments(sample_direct(b.spec, m, 31), stats);
    for (std::size_t k = 0; k < stats.size(); ++k) {
      const double target = k < n ? b.mean : (k < 2 * n ? b.second : b.norm2);
      worst = std::max(worst, std::abs(direct.mean[k] - target) / direct.se[k]);
    }
    if (b.spec.kind() == MeasureKind::uniform_simplex) continue;
    const auto chain = moments(hit_and_run(b.spec, m, 32), stats, 4.0);
    for (std::size_t k = 0; k < stats.size(); ++k) {
      const double se = std::hypot(direct.se[k], chain.se[k]);
      worst_hr = std::max(worst_hr, std::abs(direct.mean[k] - chain.mean[k]) / se);
    }
  }
  ok = worst <= 5.0 && worst_hr <= 5.0;
  return {ok, fmt("worst direct moment deviation %.2f sigma, worst hit-and-run vs direct %.2f sigma", worst, worst_hr)};
}

Outcome determinism() {
  const std::vector<std::string> docs{
      R"({"command": "verify-theorem1", "seed": 5, "fixed_clock": true, "budget": {"instances": 2, "samples": 20000}})",
      R"({"command": "verify-cw", "seed": 5, "fixed_clock": true, "budget": {"instances": 1, "samples": 20000}})",
      R"({"command": "verify-classical", "seed": 5, "fixed_clock": true})",
      R"({"command": "tightness", "seed": 5, "fixed_clock": true})",
      R"({"command": "search-extremal", "seed": 5, "fixed_clock": true, "search": {"d": 2}})",
      R"({"command": "fit-constant", "seed": 5, "fixed_clock": true, "budget": {"instances": 1, "samples": 20000}})",
  };
  std::size_t identical = 0;
  std::size_t total_bytes = 0;
  for (const auto& text : docs) {
    const auto cfg = parse_config_text(text);
    const auto a = run_experiment(cfg);
    const auto b = run_experiment(cfg);
    const auto ja = render_json(a.reports, a.meta), jb = render_json(b.reports, b.meta);
    const auto ca = render_csv(a.reports), cb = render_csv(b.reports);
    if (ja == jb && ca == cb) ++identical;
    total_bytes += ja.size();
  }
  return {identical == docs.size(),
          fmt("%zu/%zu commands byte-identical in JSON and CSV (%zu bytes)", identical, docs.size(), total_bytes)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"tightness example is exact", tightness},
      {"integral inequality suite", theorem1_suite},
      {"level-set suite", cw_suite},
      {"classical and vector suites", classical_suite},
      {"norm engine oracles", norm_oracles},
      {"negative exponents", negative_p},
      {"sampler validation", samplers},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
