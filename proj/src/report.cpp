#include "remez/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace remez {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// JSON has no infinities; they travel as strings.
ordered_json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

double number_from(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw std::runtime_error("report: expected a number, got " + j.dump());
}

ordered_json estimate_json(const Estimate& e) {
  ordered_json j;
  j["value"] = number(e.value);
  j["radius"] = number(e.radius);
  return j;
}

Estimate estimate_from(const json& j) { return {number_from(j.at("value")), number_from(j.at("radius"))}; }

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_double(const std::string& s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::runtime_error("report: bad number '" + s + "'");
  return v;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (quoted) {
      if (ch == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        field += ch;
      }
      continue;
    }
    if (ch == '"') {
      quoted = true;
      any = true;
    } else if (ch == ',') {
      row.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (ch == '\n') {
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      any = false;
    } else if (ch != '\r') {
      field += ch;
      any = true;
    }
  }
  if (any) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

const char* kCsvColumns[] = {
    "suite",       "key",          "measure",      "set",         "n",          "d",          "p",
    "t",           "index",        "poly_seed",    "sample_seed", "lhs_mode",   "relation",   "mu_a.value",
    "mu_a.radius", "lhs.value",    "lhs.radius",   "rhs.value",   "rhs.radius", "reference.value",
    "reference.radius", "factor",  "branch_low",   "branch_high", "margin",     "verdict",    "implied_c",
    "flagged",     "wall_time",
};

}  // namespace

std::map<std::string, std::size_t> verdict_counts(const std::vector<InequalityReport>& reports) {
  std::map<std::string, std::size_t> counts;
  for (auto v : {Verdict::holds, Verdict::holds_within_noise, Verdict::violated, Verdict::inconclusive})
    counts[to_string(v)] = 0;
  for (const auto& r : reports) ++counts[to_string(r.verdict)];
  return counts;
}

ordered_json report_to_json(const InequalityReport& r) {
  ordered_json j;
  j["suite"] = r.suite;
  j["key"] = r.key;
  j["measure"] = r.measure;
  j["set"] = r.set;
  j["n"] = r.n;
  j["d"] = r.d;
  j["p"] = number(r.p);
  j["t"] = number(r.t);
  j["index"] = r.index;
  j["poly_seed"] = r.poly_seed;
  j["sample_seed"] = r.sample_seed;
  j["lhs_mode"] = r.lhs_mode;
  j["relation"] = to_string(r.relation);
  j["mu_a"] = estimate_json(r.mu_a);
  j["lhs"] = estimate_json(r.lhs);
  j["rhs"] = estimate_json(r.rhs);
  j["reference"] = estimate_json(r.reference);
  j["factor"] = number(r.factor);
  j["branch_low"] = number(r.branch_low);
  j["branch_high"] = number(r.branch_high);
  j["margin"] = number(r.margin);
  j["verdict"] = to_string(r.verdict);
  j["implied_c"] = number(r.implied_c);
  j["flagged"] = r.flagged;
  j["wall_time"] = number(r.wall_time);
  return j;
}

InequalityReport report_from_json(const json& j) {
  InequalityReport r;
  r.suite = j.at("suite").get<std::string>();
  r.key = j.at("key").get<std::string>();
  r.measure = j.at("measure").get<std::string>();
  r.set = j.at("set").get<std::string>();
  r.n = j.at("n").get<std::size_t>();
  r.d = j.at("d").get<unsigned>();
  r.p = number_from(j.at("p"));
  r.t = number_from(j.at("t"));
  r.index = j.at("index").get<std::size_t>();
  r.poly_seed = j.at("poly_seed").get<std::uint64_t>();
  r.sample_seed = j.at("sample_seed").get<std::uint64_t>();
  r.lhs_mode = j.at("lhs_mode").get<std::string>();
  r.relation = relation_from_string(j.at("relation").get<std::string>());
  r.mu_a = estimate_from(j.at("mu_a"));
  r.lhs = estimate_from(j.at("lhs"));
  r.rhs = estimate_from(j.at("rhs"));
  r.reference = estimate_from(j.at("reference"));
  r.factor = number_from(j.at("factor"));
  r.branch_low = number_from(j.at("branch_low"));
  r.branch_high = number_from(j.at("branch_high"));
  r.margin = number_from(j.at("margin"));
  r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  r.implied_c = number_from(j.at("implied_c"));
  r.flagged = j.at("flagged").get<bool>();
  r.wall_time = number_from(j.at("wall_time"));
  return r;
}

std::string render_json(const std::vector<InequalityReport>& reports, const ReportMeta& meta) {
  ordered_json doc;
  doc["tool"] = kToolName;
  doc["version"] = kToolVersion;
  doc["schema"] = kSchemaVersion;
  doc["command"] = meta.command;
  doc["config"] = meta.config;
  doc["runtime_seconds"] = number(meta.runtime_seconds);
  ordered_json summary;
  summary["records"] = reports.size();
  ordered_json counts = ordered_json::object();
  for (const auto& [k, v] : verdict_counts(reports)) counts[k] = v;
  summary["verdicts"] = counts;
  summary["skipped"] = meta.skipped;
  doc["summary"] = summary;
  doc["extras"] = meta.extras;
  ordered_json records = ordered_json::array();
  for (const auto& r : reports) records.push_back(report_to_json(r));
  doc["records"] = std::move(records);
  return doc.dump(2) + "\n";
}

std::string render_csv(const std::vector<InequalityReport>& reports) {
  std::ostringstream out;
  bool first = true;
  for (const char* c : kCsvColumns) {
    out << (first ? "" : ",") << c;
    first = false;
  }
  out << "\n";
  for (const auto& r : reports) {
    const std::vector<std::string> row = {
        csv_field(r.suite), csv_field(r.key), csv_field(r.measure), csv_field(r.set), std::to_string(r.n),
        std::to_string(r.d), fmt(r.p), fmt(r.t), std::to_string(r.index), std::to_string(r.poly_seed),
        std::to_string(r.sample_seed), r.lhs_mode, to_string(r.relation), fmt(r.mu_a.value), fmt(r.mu_a.radius),
        fmt(r.lhs.value), fmt(r.lhs.radius), fmt(r.rhs.value), fmt(r.rhs.radius), fmt(r.reference.value),
        fmt(r.reference.radius), fmt(r.factor), fmt(r.branch_low), fmt(r.branch_high), fmt(r.margin),
        to_string(r.verdict), fmt(r.implied_c), r.flagged ? "true" : "false", fmt(r.wall_time)};
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << "\n";
  }
  return out.str();
}

void write_report(const std::vector<InequalityReport>& reports, const ReportMeta& meta, const std::string& path,
                  ReportFormat format) {
  const std::string body = format == ReportFormat::json ? render_json(reports, meta) : render_csv(reports);
  if (path.empty() || path == "-") {
    std::cout << body;
    std::cout.flush();
    if (!std::cout) throw std::runtime_error("report: write to stdout failed");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("report: cannot open '" + path + "' for writing");
  out << body;
  out.close();
  if (!out) throw std::runtime_error("report: write to '" + path + "' failed");
}

ParsedReport parse_json_report(const std::string& text) {
  const json doc = json::parse(text);
  if (doc.at("tool").get<std::string>() != kToolName) throw std::runtime_error("report: not a remez-lab report");
  ParsedReport out;
  out.meta.command = doc.at("command").get<std::string>();
  out.meta.config = doc.at("config");
  out.meta.runtime_seconds = number_from(doc.at("runtime_seconds"));
  out.meta.extras = doc.at("extras");
  const auto& summary = doc.at("summary");
  out.meta.skipped = summary.at("skipped").get<std::vector<std::string>>();
  for (auto it = summary.at("verdicts").begin(); it != summary.at("verdicts").end(); ++it)
    out.counts[it.key()] = it.value().get<std::size_t>();
  for (const auto& r : doc.at("records")) out.records.push_back(report_from_json(r));
  return out;
}

std::vector<InequalityReport> parse_csv_report(const std::string& text) {
  const auto rows = csv_rows(text);
  constexpr std::size_t kCols = sizeof(kCsvColumns) / sizeof(kCsvColumns[0]);
  if (rows.empty() || rows[0].size() != kCols) throw std::runtime_error("report: CSV header mismatch");
  std::vector<InequalityReport> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& f = rows[i];
    if (f.size() != kCols) throw std::runtime_error("report: CSV row " + std::to_string(i) + " has wrong width");
    InequalityReport r;
    r.suite = f[0];
    r.key = f[1];
    r.measure = f[2];
    r.set = f[3];
    r.n = std::stoull(f[4]);
    r.d = static_cast<unsigned>(std::stoul(f[5]));
    r.p = parse_double(f[6]);
    r.t = parse_double(f[7]);
    r.index = std::stoull(f[8]);
    r.poly_seed = std::stoull(f[9]);
    r.sample_seed = std::stoull(f[10]);
    r.lhs_mode = f[11];
    r.relation = relation_from_string(f[12]);
    r.mu_a = {parse_double(f[13]), parse_double(f[14])};
    r.lhs = {parse_double(f[15]), parse_double(f[16])};
    r.rhs = {parse_double(f[17]), parse_double(f[18])};
    r.reference = {parse_double(f[19]), parse_double(f[20])};
    r.factor = parse_double(f[21]);
    r.branch_low = parse_double(f[22]);
    r.branch_high = parse_double(f[23]);
    r.margin = parse_double(f[24]);
    r.verdict = verdict_from_string(f[25]);
    r.implied_c = parse_double(f[26]);
    r.flagged = f[27] == "true";
    r.wall_time = parse_double(f[28]);
    out.push_back(std::move(r));
  }
  return out;
}

int exit_code_for(const std::vector<InequalityReport>& reports) {
  bool inconclusive = false;
  for (const auto& r : reports) {
    if (r.verdict == Verdict::violated) return 2;
    if (r.verdict == Verdict::inconclusive) inconclusive = true;
  }
  return inconclusive ? 3 : 0;
}

}  // namespace remez
