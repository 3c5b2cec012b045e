#pragma once

#include <optional>
#include <string>

#include "eflow/graph.hpp"

namespace eflow {

struct RunConfig {
  enum class Algorithm { simple, improved, cut, exact };

  Algorithm algorithm = Algorithm::exact;
  double epsilon = 0.1;
  // When set, runs a single probe at this flow value instead of searching.
  std::optional<double> flow_value;
  bool instrument = false;
  std::string trace_path;  // per-iteration JSON lines; requires instrument
};

enum class RunStatus { ok, algorithm_fail, disconnected };

// One result object per run; to_json() emits the full fixed schema with
// nulls for fields the mode does not produce.
struct RunReport {
  std::string algorithm;
  double epsilon = 0.0;
  int n = 0;
  int m = 0;
  RunStatus status = RunStatus::ok;
  std::optional<double> flow_value_found;
  std::optional<bool> feasible;
  std::optional<double> max_congestion;
  std::optional<double> cut_capacity;
  std::optional<long> iterations;
  std::optional<long> oracle_calls;
  std::optional<long> linear_solves;
  std::optional<double> target_flow;
  std::optional<double> guarantee_value;
  std::optional<std::string> error;
  double wall_ms = 0.0;

  std::string to_json() const;
};

const char* algorithm_name(RunConfig::Algorithm a);
std::optional<RunConfig::Algorithm> algorithm_from_name(const std::string& name);

RunReport run(const RunConfig& config, const Graph& g);

}  // namespace eflow
