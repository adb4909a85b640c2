// remez-lab: run a verification experiment from a JSON config file.

#include <exception>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "remez/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of Remez-type integral inequalities"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<double> c;
  std::string out_path, format, plot_path;
  bool fixed_clock = false;
  std::vector<std::string> sets;

  const char* commands[][2] = {
      {"verify-theorem1", "integral inequality suite over random polynomials and sets"},
      {"verify-cw", "level-set (Carbery-Wright) suite"},
      {"verify-classical", "classical, vector-valued and trigonometric sup-norm suites"},
      {"tightness", "exact exponential-measure example t^d on [0, eps]"},
      {"search-extremal", "random search for polynomials with a large norm ratio"},
      {"fit-constant", "empirical constant fit over the integral suite"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "JSON experiment config")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "master seed");
    sub->add_option("--c", c, "universal constant used in the bounds");
    sub->add_option("--out", out_path, "report path (stdout when omitted)");
    sub->add_option("--format", format, "report format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--plot", plot_path, "SVG plot path");
    sub->add_flag("--fixed-clock", fixed_clock, "zero all timing fields for byte-identical output");
    sub->add_option("--set", sets, "override any config key, e.g. --set budget.samples=2000");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  std::vector<std::pair<std::string, std::string>> overrides;
  overrides.emplace_back("command", "\"" + app.get_subcommands().front()->get_name() + "\"");
  for (const auto& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::cerr << "error: --set expects key=value, got '" << s << "'\n";
      return 1;
    }
    overrides.emplace_back(s.substr(0, eq), s.substr(eq + 1));
  }
  if (seed) overrides.emplace_back("seed", std::to_string(*seed));
  if (c) overrides.emplace_back("c", nlohmann::json(*c).dump());
  if (!out_path.empty()) overrides.emplace_back("output.path", nlohmann::json(out_path).dump());
  if (!format.empty()) overrides.emplace_back("output.format", nlohmann::json(format).dump());
  if (!plot_path.empty()) overrides.emplace_back("output.plot", nlohmann::json(plot_path).dump());
  if (fixed_clock) overrides.emplace_back("fixed_clock", "true");

  remez::ExperimentConfig config;
  try {
    config = remez::parse_config_file(config_path, overrides);
  } catch (const remez::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }

  try {
    const auto outcome = remez::run_experiment(config);
    const int code = remez::publish(outcome, config);
    const auto counts = remez::verdict_counts(outcome.reports);
    std::cerr << outcome.meta.command << ": " << outcome.reports.size() << " records";
    for (const auto& [k, v] : counts) std::cerr << ", " << k << " " << v;
    if (!outcome.meta.skipped.empty()) std::cerr << ", skipped " << outcome.meta.skipped.size();
    std::cerr << "\n";
    return code;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
