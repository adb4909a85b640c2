#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "remez/certifier.hpp"
#include "remez/config.hpp"

namespace remez {

inline constexpr const char* kToolName = "remez-lab";
inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

/// Everything a report file carries besides the records.
struct ReportMeta {
  std::string command;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  double runtime_seconds = 0.0;
  std::vector<std::string> skipped;
  /// Command-specific results (fitted constants, tightness rows, ...).
  nlohmann::ordered_json extras = nlohmann::ordered_json::object();
};

std::map<std::string, std::size_t> verdict_counts(const std::vector<InequalityReport>& reports);

nlohmann::ordered_json report_to_json(const InequalityReport& r);
InequalityReport report_from_json(const nlohmann::json& j);

std::string render_json(const std::vector<InequalityReport>& reports, const ReportMeta& meta);
/// One header row of dotted field names, then one row per record.
std::string render_csv(const std::vector<InequalityReport>& reports);

/// Writes to path, or to stdout when path is empty or "-". Throws
/// std::runtime_error on I/O failure.
void write_report(const std::vector<InequalityReport>& reports, const ReportMeta& meta, const std::string& path,
                  ReportFormat format);

struct ParsedReport {
  ReportMeta meta;
  std::vector<InequalityReport> records;
  std::map<std::string, std::size_t> counts;
};
ParsedReport parse_json_report(const std::string& text);
std::vector<InequalityReport> parse_csv_report(const std::string& text);

/// 0 if every verdict holds (possibly within noise), 2 if any is violated,
/// otherwise 3 if any is inconclusive.
int exit_code_for(const std::vector<InequalityReport>& reports);

}  // namespace remez
