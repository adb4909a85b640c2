#include "remez/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace remez {

using nlohmann::json;

namespace {

struct CommandName {
  Command command;
  const char* name;
};
constexpr CommandName kCommands[] = {
    {Command::verify_theorem1, "verify-theorem1"}, {Command::verify_cw, "verify-cw"},
    {Command::verify_classical, "verify-classical"}, {Command::tightness, "tightness"},
    {Command::search_extremal, "search-extremal"}, {Command::fit_constant, "fit-constant"},
};

std::string join(const std::string& prefix, const std::string& key) { return prefix.empty() ? key : prefix + "." + key; }

// Walks one JSON object, handing out typed fields and remembering which keys
// were consumed so leftovers can be rejected by name.
class Reader {
 public:
  Reader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) fail(path_.empty() ? "config" : path_, "expected an object");
  }

  bool has(const std::string& key) const { return obj_.contains(key); }
  std::string path(const std::string& key) const { return join(path_, key); }

  const json* get(const std::string& key) {
    seen_.insert(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  double number(const std::string& key, double fallback) {
    const json* v = get(key);
    if (!v) return fallback;
    if (!v->is_number()) fail(path(key), "expected a number");
    return v->get<double>();
  }

  std::uint64_t count(const std::string& key, std::uint64_t fallback) {
    const json* v = get(key);
    if (!v) return fallback;
    if (!v->is_number_integer() || v->get<long long>() < 0) fail(path(key), "expected a non-negative integer");
    return v->get<std::uint64_t>();
  }

  bool boolean(const std::string& key, bool fallback) {
    const json* v = get(key);
    if (!v) return fallback;
    if (!v->is_boolean()) fail(path(key), "expected true or false");
    return v->get<bool>();
  }

  std::string text(const std::string& key, const std::string& fallback) {
    const json* v = get(key);
    if (!v) return fallback;
    if (!v->is_string()) fail(path(key), "expected a string");
    return v->get<std::string>();
  }

  std::vector<double> numbers(const std::string& key, std::vector<double> fallback) {
    const json* v = get(key);
    if (!v) return fallback;
    if (!v->is_array() || v->empty()) fail(path(key), "expected a non-empty array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v->size(); ++i) {
      if (!(*v)[i].is_number()) fail(path(key) + "[" + std::to_string(i) + "]", "expected a number");
      out.push_back((*v)[i].get<double>());
    }
    return out;
  }

  template <class T>
  std::vector<T> counts(const std::string& key, std::vector<T> fallback) {
    const json* v = get(key);
    if (!v) return fallback;
    if (!v->is_array() || v->empty()) fail(path(key), "expected a non-empty array of integers");
    std::vector<T> out;
    for (std::size_t i = 0; i < v->size(); ++i) {
      const auto& e = (*v)[i];
      if (!e.is_number_integer() || e.get<long long>() < 0)
        fail(path(key) + "[" + std::to_string(i) + "]", "expected a non-negative integer");
      out.push_back(static_cast<T>(e.get<std::uint64_t>()));
    }
    return out;
  }

  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it)
      if (!seen_.count(it.key())) fail(path(it.key()), "unknown key");
  }

  [[noreturn]] static void fail(const std::string& where, const std::string& what) {
    throw ConfigError(where + ": " + what);
  }

 private:
  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

void require(bool ok, const std::string& where, const std::string& what) {
  if (!ok) Reader::fail(where, what);
}

std::vector<double> vector_or_fill(Reader& r, const std::string& key, std::size_t n, double fill) {
  const json* v = r.get(key);
  if (!v) return std::vector<double>(n, fill);
  if (v->is_number()) return std::vector<double>(n, v->get<double>());
  if (!v->is_array() || v->size() != n) Reader::fail(r.path(key), "expected a number or an array of length n");
  std::vector<double> out;
  for (const auto& e : *v) {
    if (!e.is_number()) Reader::fail(r.path(key), "expected numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

MeasureSpec parse_measure(const json& obj, const std::string& where) {
  Reader r(obj, where);
  const std::string kind_name = r.text("kind", "");
  require(!kind_name.empty(), r.path("kind"), "required");
  MeasureKind kind;
  try {
    kind = measure_kind_from_string(kind_name);
  } catch (const std::exception&) {
    Reader::fail(r.path("kind"), "unknown measure '" + kind_name + "'");
  }
  const std::size_t n = r.count("n", 1);
  require(n >= 1 && n <= kMaxDimension, r.path("n"), "must lie in [1, " + std::to_string(kMaxDimension) + "]");
  std::optional<MeasureSpec> spec;
  try {
    switch (kind) {
      case MeasureKind::uniform_box: {
        auto lo = vector_or_fill(r, "lo", n, -1.0);
        auto hi = vector_or_fill(r, "hi", n, 1.0);
        spec = MeasureSpec::box(std::move(lo), std::move(hi));
        break;
      }
      case MeasureKind::uniform_ball: {
        const double radius = r.number("radius", 1.0);
        require(radius > 0.0, r.path("radius"), "must be positive");
        spec = MeasureSpec::ball(n, radius);
        break;
      }
      case MeasureKind::uniform_simplex: spec = MeasureSpec::simplex(n); break;
      case MeasureKind::uniform_polytope: {
        const json* A = r.get("A");
        const json* b = r.get("b");
        require(A && A->is_array() && !A->empty(), r.path("A"), "required non-empty array of rows");
        require(b && b->is_array() && b->size() == A->size(), r.path("b"), "required, one entry per row of A");
        HalfspaceSystem sys;
        for (std::size_t i = 0; i < A->size(); ++i) {
          const auto& row = (*A)[i];
          const std::string rp = r.path("A") + "[" + std::to_string(i) + "]";
          require(row.is_array() && row.size() == n, rp, "expected n numbers");
          std::vector<double> v;
          for (const auto& e : row) {
            require(e.is_number(), rp, "expected numbers");
            v.push_back(e.get<double>());
          }
          sys.A.push_back(std::move(v));
          require((*b)[i].is_number(), r.path("b") + "[" + std::to_string(i) + "]", "expected a number");
          sys.b.push_back((*b)[i].get<double>());
        }
        spec = MeasureSpec::polytope(std::move(sys));
        break;
      }
      case MeasureKind::exponential_halfline:
        require(n == 1, r.path("n"), "the exponential measure is one-dimensional");
        spec = MeasureSpec::exponential();
        break;
      case MeasureKind::gaussian_standard: spec = MeasureSpec::gaussian(n); break;
      case MeasureKind::interval_uniform: {
        require(n == 1, r.path("n"), "an interval is one-dimensional");
        const double lo = r.number("lo", 0.0), hi = r.number("hi", 1.0);
        require(lo < hi, r.path("hi"), "must exceed lo");
        spec = MeasureSpec::interval(lo, hi);
        break;
      }
    }
  } catch (const MeasureError& e) {
    Reader::fail(where, e.what());
  }
  const std::string sampler = r.text("sampler", "direct");
  HitAndRunParams hr;
  hr.burn_in = r.count("burn_in", 0);
  hr.thinning = r.count("thinning", 0);
  if (sampler == "hit_and_run") {
    require(spec->has_body(), r.path("sampler"), "hit_and_run needs a bounded body");
    spec = spec->with_policy(SamplerPolicy::hit_and_run, hr);
  } else {
    require(sampler == "direct", r.path("sampler"), "expected 'direct' or 'hit_and_run'");
    require(spec->has_direct_sampler(), r.path("sampler"), "this measure needs 'hit_and_run'");
  }
  r.finish();
  return *spec;
}

CoefficientLaw parse_law(const std::string& s, const std::string& where) {
  if (s == "standard_normal") return CoefficientLaw::standard_normal;
  if (s == "uniform") return CoefficientLaw::uniform;
  if (s == "spiked") return CoefficientLaw::spiked;
  Reader::fail(where, "expected 'standard_normal', 'uniform' or 'spiked'");
}

void check_quantiles(const std::vector<double>& q, const std::string& where) {
  for (std::size_t i = 0; i < q.size(); ++i)
    require(q[i] > 0.0 && q[i] < 1.0, where + "[" + std::to_string(i) + "]", "quantile must lie in (0, 1)");
}

}  // namespace

std::string to_string(Command c) {
  for (const auto& e : kCommands)
    if (e.command == c) return e.name;
  return "verify-theorem1";
}

Command command_from_string(const std::string& s) {
  for (const auto& e : kCommands)
    if (s == e.name) return e.command;
  throw ConfigError("command: unknown command '" + s + "'");
}

ExperimentConfig parse_config(const json& doc) {
  ExperimentConfig cfg;
  Reader top(doc, "");

  const std::string command = top.text("command", "");
  require(!command.empty(), "command", "required");
  cfg.command = command_from_string(command);
  const json* seed = top.get("seed");
  require(seed != nullptr, "seed", "required");
  require(seed->is_number_unsigned() || (seed->is_number_integer() && seed->get<long long>() >= 0), "seed",
          "expected a non-negative integer");
  cfg.seed = seed->get<std::uint64_t>();

  cfg.c = top.number("c", 4.0);
  require(cfg.c > 0.0 && std::isfinite(cfg.c), "c", "must be positive");
  cfg.R = top.number("R", 4.0);
  require(cfg.R > 0.0 && std::isfinite(cfg.R), "R", "must be positive");
  cfg.confidence = top.number("confidence", 0.99);
  require(cfg.confidence > 0.0 && cfg.confidence < 1.0, "confidence", "must lie in (0, 1)");
  cfg.fixed_clock = top.boolean("fixed_clock", false);
  const auto threads = top.count("threads", 0);

  SuiteConfig& s = cfg.suite;
  s.seed = cfg.seed;
  s.c = cfg.c;
  s.confidence = cfg.confidence;
  s.fixed_clock = cfg.fixed_clock;
  s.threads = static_cast<unsigned>(threads);

  if (const json* m = top.get("measures")) {
    require(m->is_array() && !m->empty(), "measures", "expected a non-empty array of measure kinds");
    s.bodies.clear();
    for (std::size_t i = 0; i < m->size(); ++i) {
      const std::string where = "measures[" + std::to_string(i) + "]";
      require((*m)[i].is_string(), where, "expected a measure kind");
      try {
        s.bodies.push_back(measure_kind_from_string((*m)[i].get<std::string>()));
      } catch (const std::exception&) {
        Reader::fail(where, "unknown measure '" + (*m)[i].get<std::string>() + "'");
      }
      require(s.bodies.back() != MeasureKind::uniform_polytope, where, "polytopes are given through 'measure'");
    }
  }
  if (const json* m = top.get("measure")) s.measure = parse_measure(*m, "measure");

  if (const json* g = top.get("grid")) {
    Reader r(*g, "grid");
    s.dims = r.counts<std::size_t>("n", s.dims);
    s.degrees = r.counts<unsigned>("d", s.degrees);
    s.exponents = r.numbers("p", s.exponents);
    s.thresholds = r.count("thresholds", s.thresholds);
    r.finish();
  }
  for (std::size_t i = 0; i < s.dims.size(); ++i)
    require(s.dims[i] >= 1 && s.dims[i] <= kMaxDimension, "grid.n[" + std::to_string(i) + "]",
            "must lie in [1, " + std::to_string(kMaxDimension) + "]");
  for (std::size_t i = 0; i < s.degrees.size(); ++i)
    require(s.degrees[i] >= 1, "grid.d[" + std::to_string(i) + "]", "degree must be at least 1");
  require(s.thresholds >= 1, "grid.thresholds", "must be positive");
  for (std::size_t i = 0; i < s.exponents.size(); ++i) {
    const double p = s.exponents[i];
    const std::string where = "grid.p[" + std::to_string(i) + "]";
    require(std::isfinite(p) && p != 0.0, where, "p must be finite and non-zero");
    if (cfg.command == Command::verify_cw || cfg.command == Command::fit_constant)
      require(p > 0.0, where, "this command needs p > 0");
    for (unsigned d : s.degrees)
      require(p > -1.0 / static_cast<double>(d), where,
              "p = " + json(p).dump() + " lies outside (-1/d, 0) U (0, inf) for d = " + std::to_string(d));
  }

  if (const json* g = top.get("sets")) {
    Reader r(*g, "sets");
    if (const json* h = r.get("halfspace_quantiles")) {
      require(h->is_array(), "sets.halfspace_quantiles", "expected an array");
      s.halfspace_quantiles.clear();
      for (const auto& e : *h) {
        require(e.is_number(), "sets.halfspace_quantiles", "expected numbers");
        s.halfspace_quantiles.push_back(e.get<double>());
      }
    }
    if (const json* h = r.get("sublevel_quantiles")) {
      require(h->is_array(), "sets.sublevel_quantiles", "expected an array");
      s.sublevel_quantiles.clear();
      for (const auto& e : *h) {
        require(e.is_number(), "sets.sublevel_quantiles", "expected numbers");
        s.sublevel_quantiles.push_back(e.get<double>());
      }
    }
    r.finish();
  }
  check_quantiles(s.halfspace_quantiles, "sets.halfspace_quantiles");
  check_quantiles(s.sublevel_quantiles, "sets.sublevel_quantiles");
  require(!s.halfspace_quantiles.empty() || !s.sublevel_quantiles.empty(), "sets", "at least one set family is needed");

  ExtremalConfig& x = cfg.search;
  x.seed = cfg.seed;
  if (const json* b = top.get("budget")) {
    Reader r(*b, "budget");
    s.samples = r.count("samples", s.samples);
    s.instances = r.count("instances", s.instances);
    s.pilot = r.count("pilot", s.pilot);
    s.law = parse_law(r.text("law", "standard_normal"), "budget.law");
    x.iterations = r.count("iterations", x.iterations);
    x.restarts = r.count("restarts", x.restarts);
    r.finish();
  }
  require(s.samples > 0, "budget.samples", "must be positive");
  require(s.instances > 0, "budget.instances", "must be positive");
  require(s.pilot > 0, "budget.pilot", "must be positive");
  require(x.iterations > 0, "budget.iterations", "must be positive");
  require(x.restarts > 0, "budget.restarts", "must be positive");

  ClassicalConfig& k = cfg.classical;
  k.seed = cfg.seed;
  k.R = cfg.R;
  k.fixed_clock = cfg.fixed_clock;
  if (const json* c = top.get("classical")) {
    Reader r(*c, "classical");
    k.scalar_instances = r.count("scalar_instances", k.scalar_instances);
    k.vector_instances = r.count("vector_instances", k.vector_instances);
    k.trig_instances = r.count("trig_instances", k.trig_instances);
    k.max_degree = static_cast<unsigned>(r.count("max_degree", k.max_degree));
    k.max_components = r.count("max_components", k.max_components);
    k.trig_max_degree = static_cast<unsigned>(r.count("trig_max_degree", k.trig_max_degree));
    k.trig_dimension = r.count("trig_dimension", k.trig_dimension);
    k.min_fraction = r.number("min_fraction", k.min_fraction);
    k.max_pieces = r.count("max_pieces", k.max_pieces);
    k.trig_R = r.number("trig_R", k.trig_R);
    r.finish();
  }
  require(k.scalar_instances + k.vector_instances + k.trig_instances > 0, "classical", "no instances requested");
  require(k.max_degree >= 1, "classical.max_degree", "must be at least 1");
  require(k.max_components >= 1, "classical.max_components", "must be at least 1");
  require(k.trig_max_degree >= 1, "classical.trig_max_degree", "must be at least 1");
  require(k.trig_dimension >= 1, "classical.trig_dimension", "must be at least 1");
  require(k.min_fraction > 0.0 && k.min_fraction <= 1.0, "classical.min_fraction", "must lie in (0, 1]");
  require(k.max_pieces >= 1, "classical.max_pieces", "must be at least 1");
  require(k.trig_R > 0.0, "classical.trig_R", "must be positive");

  if (const json* t = top.get("tightness")) {
    Reader r(*t, "tightness");
    cfg.tightness.degrees = r.counts<unsigned>("degrees", cfg.tightness.degrees);
    cfg.tightness.eps = r.numbers("eps", cfg.tightness.eps);
    cfg.tightness.tol = r.number("tol", cfg.tightness.tol);
    r.finish();
  }
  for (std::size_t i = 0; i < cfg.tightness.degrees.size(); ++i)
    require(cfg.tightness.degrees[i] >= 1, "tightness.degrees[" + std::to_string(i) + "]", "must be at least 1");
  for (std::size_t i = 0; i < cfg.tightness.eps.size(); ++i)
    require(cfg.tightness.eps[i] > 0.0, "tightness.eps[" + std::to_string(i) + "]", "must be positive");
  require(cfg.tightness.tol > 0.0, "tightness.tol", "must be positive");

  if (s.measure) x.measure = *s.measure;
  if (const json* g = top.get("search")) {
    Reader r(*g, "search");
    const std::string family = r.text("family", "dense");
    require(family == "dense" || family == "monomial", "search.family", "expected 'dense' or 'monomial'");
    x.family = family == "dense" ? ExtremalFamily::dense : ExtremalFamily::monomial;
    x.d = static_cast<unsigned>(r.count("d", x.d));
    x.p = r.number("p", x.p);
    x.set_fraction = r.number("set_fraction", x.set_fraction);
    x.eps = r.number("eps", x.eps);
    x.samples = r.count("samples", x.samples);
    x.step = r.number("step", x.step);
    x.decay = r.number("decay", x.decay);
    r.finish();
  }
  require(x.d >= 1, "search.d", "must be at least 1");
  require(x.p > 0.0, "search.p", "must be positive");
  require(x.set_fraction > 0.0 && x.set_fraction < 1.0, "search.set_fraction", "must lie in (0, 1)");
  require(x.eps > 0.0, "search.eps", "must be positive");
  require(x.samples > 0, "search.samples", "must be positive");
  require(x.step > 0.0, "search.step", "must be positive");
  require(x.decay > 0.0 && x.decay <= 1.0, "search.decay", "must lie in (0, 1]");
  if (x.family == ExtremalFamily::monomial)
    require(x.measure.is_exact_1d(), "search.family", "the monomial family needs an interval or exponential measure");

  if (const json* o = top.get("output")) {
    Reader r(*o, "output");
    cfg.output.path = r.text("path", "");
    const std::string format = r.text("format", "json");
    require(format == "json" || format == "csv", "output.format", "expected 'json' or 'csv'");
    cfg.output.format = format == "json" ? ReportFormat::json : ReportFormat::csv;
    cfg.output.plot = r.text("plot", "");
    r.finish();
  }
  top.finish();

  auto& e = cfg.echo;
  e["command"] = to_string(cfg.command);
  e["seed"] = cfg.seed;
  e["c"] = cfg.c;
  e["R"] = cfg.R;
  e["confidence"] = cfg.confidence;
  e["fixed_clock"] = cfg.fixed_clock;
  e["threads"] = s.threads;
  {
    json bodies = json::array();
    for (auto b : s.bodies) bodies.push_back(to_string(b));
    e["measures"] = bodies;
  }
  e["measure"] = s.measure ? json(s.measure->describe()) : json(nullptr);
  e["grid"] = {{"n", s.dims}, {"d", s.degrees}, {"p", s.exponents}, {"thresholds", s.thresholds}};
  e["sets"] = {{"halfspace_quantiles", s.halfspace_quantiles}, {"sublevel_quantiles", s.sublevel_quantiles}};
  static const char* laws[] = {"standard_normal", "uniform", "spiked"};
  e["budget"] = {{"samples", s.samples},       {"instances", s.instances},   {"pilot", s.pilot},
                 {"law", laws[static_cast<int>(s.law)]}, {"iterations", x.iterations}, {"restarts", x.restarts}};
  e["classical"] = {{"scalar_instances", k.scalar_instances}, {"vector_instances", k.vector_instances},
                    {"trig_instances", k.trig_instances},     {"max_degree", k.max_degree},
                    {"max_components", k.max_components},     {"trig_max_degree", k.trig_max_degree},
                    {"trig_dimension", k.trig_dimension},     {"min_fraction", k.min_fraction},
                    {"max_pieces", k.max_pieces},             {"trig_R", k.trig_R}};
  e["tightness"] = {{"degrees", cfg.tightness.degrees}, {"eps", cfg.tightness.eps}, {"tol", cfg.tightness.tol}};
  e["search"] = {{"family", x.family == ExtremalFamily::dense ? "dense" : "monomial"},
                 {"d", x.d},
                 {"p", x.p},
                 {"set_fraction", x.set_fraction},
                 {"eps", x.eps},
                 {"samples", x.samples},
                 {"step", x.step},
                 {"decay", x.decay}};
  e["output"] = {{"path", cfg.output.path},
                 {"format", cfg.output.format == ReportFormat::json ? "json" : "csv"},
                 {"plot", cfg.output.plot}};
  return cfg;
}

ExperimentConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return parse_config(doc);
}

void apply_override(json& doc, const std::string& dotted_key, const std::string& value) {
  if (dotted_key.empty()) throw ConfigError("override: empty key");
  json parsed;
  try {
    parsed = json::parse(value);
  } catch (const json::parse_error&) {
    parsed = value;
  }
  json* node = &doc;
  std::stringstream ss(dotted_key);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(ss, part, '.')) parts.push_back(part);
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    if (!node->is_object()) throw ConfigError(dotted_key + ": cannot descend into a non-object");
    node = &(*node)[parts[i]];
    if (node->is_null()) *node = json::object();
  }
  if (!node->is_object()) throw ConfigError(dotted_key + ": cannot descend into a non-object");
  (*node)[parts.back()] = parsed;
}

ExperimentConfig parse_config_file(const std::string& path,
                                   const std::vector<std::pair<std::string, std::string>>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  json doc;
  try {
    doc = json::parse(buf.str(), nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError("config: " + path + ": " + e.what());
  }
  for (const auto& [key, value] : overrides) apply_override(doc, key, value);
  return parse_config(doc);
}

}  // namespace remez
