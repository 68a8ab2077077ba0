#pragma once

// Experiment driver behind the command-line tool. Every command produces a
// single JSON document {"command", "config", "results", "violations"}.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dyadic_tent/io.hpp"

namespace dyadic_tent {

struct ExperimentConfig {
  std::uint64_t seed = 1;
  std::optional<int> trials;
  std::optional<unsigned> depth;
  std::optional<std::string> p;
  std::optional<std::string> q;
  std::optional<std::string> input_path;
  Json input_data;  ///< parsed --input contents, null when absent
  unsigned oracle_limit = kDefaultOracleDepth;
  double tolerance = kIdentityTolerance;
  std::optional<std::string> kind;  ///< jnp: "l1" or "l2"
  std::optional<std::string> norm;  ///< net: "linf", "l2" or "l1"
  std::optional<int> dim;
  std::optional<double> a;
  std::optional<double> lambda;
};

Json config_to_json(const ExperimentConfig& config);
/// Inverse of config_to_json; throws InputError on malformed fields.
ExperimentConfig config_from_json(const Json& j);

enum ExitCode : int { kExitOk = 0, kExitViolation = 1, kExitInputError = 2 };

struct ExperimentOutcome {
  Json report;
  int exit_code = kExitOk;
};

const std::vector<std::string>& experiment_commands();

/// Runs one command. Throws InputError (or std::invalid_argument /
/// std::domain_error / std::length_error) for unusable input.
ExperimentOutcome run_experiment(const std::string& command, const ExperimentConfig& config);

/// Re-runs the command and config recorded in an earlier report.
ExperimentOutcome replay_report(const Json& report);

/// Flattens a report into "path,value" lines.
std::string report_to_csv(const Json& report);

/// Deterministic serialization used for report files.
std::string dump_report(const Json& report);

}  // namespace dyadic_tent
