#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "reachlab/verify.hpp"

namespace reachlab {

/// Resolved experiment description. Parsed from JSON; defaults filled in so
/// the embedded copy in a report reproduces the run exactly.
struct ExperimentConfig {
  nlohmann::json resolved() const;

  std::string operation;
  nlohmann::json manifold_spec;  // {"name": ..., params...}
  nlohmann::json map_spec;       // maps-module grammar; may be null
  std::size_t n_samples = 0;     // 0 = per-operation default
  std::size_t pair_count = CheckDefaults::kPairCount;
  std::size_t n_trials = 100;
  std::uint64_t seed = 1;
  double tolerance = 0.0;        // 0 = per-operation default (informational)
  // operation-specific numerics
  double radius = 0.0;           // normal bundle test radius
  std::size_t probes_per_point = 8;
  double reach_value = 0.0;      // curvature bound check; 0 = closed form
  std::size_t n_probes = 4096;
  int m_rows = 0;                // random projection m
  std::string json_out;
  std::string csv_out;
};

struct RunResult {
  std::vector<VerificationReport> reports;
  bool all_passed = false;
};

/// Parses and validates a config document. Throws ConfigParseError on
/// malformed JSON and ValidationError on unknown names/out-of-range values.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Builds the manifold/map named by the config and runs the operation.
RunResult run_experiment(const ExperimentConfig& config);

ParametricManifold resolve_manifold(const nlohmann::json& spec);
AnyMap resolve_map(const nlohmann::json& spec);

/// Report sinks. Both writes are atomic (temp file + rename).
void write_json_report(const std::string& path, const ExperimentConfig& config,
                       const RunResult& result);
void write_csv_report(const std::string& path, const RunResult& result);

/// Serialization used by both sinks and the tests.
nlohmann::json report_to_json(const VerificationReport& report);
std::string csv_header();
std::string csv_row(const VerificationReport& report);

}  // namespace reachlab
