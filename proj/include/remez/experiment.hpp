#pragma once

#include <vector>

#include "remez/certifier.hpp"
#include "remez/config.hpp"
#include "remez/report.hpp"

namespace remez {

struct ExperimentOutcome {
  std::vector<InequalityReport> reports;
  ReportMeta meta;
  std::vector<TightnessResult> tightness;  // tightness command only
};

/// Dispatches the configured command. Output is a pure function of the
/// config; with fixed_clock set, timing fields are zero.
ExperimentOutcome run_experiment(const ExperimentConfig& config);

/// Writes the report (and the plot, when configured) and returns the exit code.
int publish(const ExperimentOutcome& outcome, const ExperimentConfig& config);

}  // namespace remez
