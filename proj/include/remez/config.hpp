#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "remez/certifier.hpp"

namespace remez {

/// Invalid or unknown configuration entry; the message starts with the
/// dotted key path.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Command { verify_theorem1, verify_cw, verify_classical, tightness, search_extremal, fit_constant };
std::string to_string(Command c);
Command command_from_string(const std::string& s);

enum class ReportFormat { json, csv };

struct TightnessConfig {
  std::vector<unsigned> degrees{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::vector<double> eps{0.1, 0.5, 1.0};
  double tol = 1e-12;
};

struct OutputConfig {
  std::string path;  // empty: stdout
  ReportFormat format = ReportFormat::json;
  std::string plot;  // empty: no plot
};

struct ExperimentConfig {
  Command command = Command::verify_theorem1;
  std::uint64_t seed = 0;
  double c = 4.0;
  double R = 4.0;
  double confidence = 0.99;
  bool fixed_clock = false;
  SuiteConfig suite;
  ClassicalConfig classical;
  TightnessConfig tightness;
  ExtremalConfig search;
  OutputConfig output;
  /// Effective configuration after defaults and overrides, echoed in reports.
  nlohmann::ordered_json echo;
};

/// Parses a JSON document. Missing keys take defaults, unknown keys throw.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig parse_config_text(const std::string& text);
/// Reads the file, applies dotted-key overrides ("budget.samples", "2000"),
/// then parses. Override values are read as JSON when they parse, else as
/// strings.
ExperimentConfig parse_config_file(const std::string& path,
                                   const std::vector<std::pair<std::string, std::string>>& overrides = {});

void apply_override(nlohmann::json& doc, const std::string& dotted_key, const std::string& value);

}  // namespace remez
