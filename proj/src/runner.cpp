#include "eflow/runner.hpp"

#include <chrono>
#include <fstream>

#include "eflow/dualcut.hpp"
#include "eflow/electrical.hpp"
#include "eflow/exact.hpp"
#include "eflow/improved.hpp"
#include "eflow/mw_simple.hpp"
#include "json.hpp"

namespace eflow {

const char* algorithm_name(RunConfig::Algorithm a) {
  switch (a) {
    case RunConfig::Algorithm::simple: return "simple";
    case RunConfig::Algorithm::improved: return "improved";
    case RunConfig::Algorithm::cut: return "cut";
    case RunConfig::Algorithm::exact: return "exact";
  }
  return "unknown";
}

std::optional<RunConfig::Algorithm> algorithm_from_name(const std::string& name) {
  if (name == "simple") return RunConfig::Algorithm::simple;
  if (name == "improved") return RunConfig::Algorithm::improved;
  if (name == "cut") return RunConfig::Algorithm::cut;
  if (name == "exact") return RunConfig::Algorithm::exact;
  return std::nullopt;
}

std::string RunReport::to_json() const {
  nlohmann::json j;
  j["algorithm"] = algorithm;
  j["epsilon"] = epsilon;
  j["n"] = n;
  j["m"] = m;
  auto set = [&j](const char* key, const auto& value) {
    if (value)
      j[key] = *value;
    else
      j[key] = nullptr;
  };
  set("flow_value_found", flow_value_found);
  set("feasible", feasible);
  set("max_congestion", max_congestion);
  set("cut_capacity", cut_capacity);
  set("iterations", iterations);
  set("oracle_calls", oracle_calls);
  set("linear_solves", linear_solves);
  set("target_flow", target_flow);
  set("guarantee_value", guarantee_value);
  set("error", error);
  j["wall_ms"] = wall_ms;
  return j.dump();
}

namespace {

class TraceWriter {
 public:
  TraceWriter(const std::string& path, bool enabled) {
    if (enabled && !path.empty()) {
      out_.open(path);
      if (!out_) throw std::runtime_error("cannot open trace file: " + path);
    }
  }

  bool active() const { return out_.is_open(); }

  void record(long i, double mu, double max_congestion, std::optional<double> phi,
              std::optional<int> h_size, std::optional<double> h_capacity) {
    if (!active()) return;
    nlohmann::json j;
    j["i"] = i;
    j["mu"] = mu;
    j["max_congestion"] = max_congestion;
    j["phi"] = phi ? nlohmann::json(*phi) : nlohmann::json(nullptr);
    j["H_size"] = h_size ? nlohmann::json(*h_size) : nlohmann::json(nullptr);
    j["H_capacity"] = h_capacity ? nlohmann::json(*h_capacity) : nlohmann::json(nullptr);
    out_ << j.dump() << '\n';
  }

 private:
  std::ofstream out_;
};

constexpr int kMaxExactTraceVertices = 40;

void fill_flow_result(RunReport& report, const Graph& g, const FlowVector& flow) {
  CongestionProfile cong = congestion(g, flow);
  report.flow_value_found = flow_value(g, flow);
  report.max_congestion = cong.max;
  report.feasible = cong.max <= 1.0 + 1e-6;
}

void run_flow_algorithm(const RunConfig& config, const Graph& g, RunReport& report) {
  const bool improved = config.algorithm == RunConfig::Algorithm::improved;
  SolveStats stats;
  long oracle_calls = 0;
  TraceWriter trace(config.trace_path, config.instrument);

  MaxflowFn at_fixed_value = [&](const Graph& gg, double F, double eps) -> OracleOutcome {
    if (improved) {
      ImprovedOptions opts;
      opts.instrument = config.instrument;
      opts.stats = &stats;
      opts.oracle_calls = &oracle_calls;
      long iteration = 0;
      if (trace.active()) {
        opts.on_solve = [&](const SolveEvent& event) {
          std::optional<double> phi;
          if (gg.vertex_count() <= kMaxExactTraceVertices)
            phi = solve_exact(*event.system, 1.0).energy;
          trace.record(++iteration, event.mu, congestion(gg, event.solution->flow).max,
                       phi, event.forbidden_count, event.forbidden_capacity);
        };
      }
      return improved_maxflow(gg, F, eps, opts);
    }
    MwOptions opts;
    opts.rho = oracle_width(gg.edge_count(), eps);
    opts.instrument = config.instrument;
    opts.stats = &stats;
    opts.oracle_calls = &oracle_calls;
    MwInstrumentation instr;
    if (config.instrument) opts.out = &instr;
    auto warm = std::make_shared<PotentialVector>();
    long iteration = 0;
    OracleOutcome out = mw_maxflow(
        gg, F, eps,
        [&](const Graph& ggg, const WeightVector& ww, double FF, double ee) -> OracleOutcome {
          OracleOutcome flow = simple_oracle(ggg, ww, FF, ee, &stats, warm.get());
          if (trace.active() && flow) {
            std::optional<double> phi;
            if (ggg.vertex_count() <= kMaxExactTraceVertices)
              phi = effective_resistance(ggg, oracle_resistances(ggg, ww, ee));
            trace.record(++iteration, ww.total, congestion(ggg, *flow).max, phi,
                         std::nullopt, std::nullopt);
          }
          return flow;
        },
        opts);
    return out;
  };

  if (config.flow_value) {
    report.target_flow = *config.flow_value;
    OracleOutcome out = at_fixed_value(g, *config.flow_value, config.epsilon);
    if (!out) {
      report.status = RunStatus::algorithm_fail;
      report.error = "oracle failed: requested flow value exceeds the maximum flow";
    } else {
      fill_flow_result(report, g, *out);
    }
  } else {
    MaxflowSearchResult result = binary_search_maxflow(g, config.epsilon, at_fixed_value);
    fill_flow_result(report, g, result.flow);
    report.target_flow = result.probe_value;
  }
  if (report.target_flow) {
    double eps = config.epsilon;
    report.guarantee_value =
        (1.0 - eps) * (1.0 - eps) / (1.0 + eps) * *report.target_flow;
  }
  report.oracle_calls = oracle_calls;
  report.linear_solves = stats.systems;
  report.iterations = oracle_calls;
}

void run_cut_algorithm(const RunConfig& config, const Graph& g, RunReport& report) {
  SolveStats stats;
  TraceWriter trace(config.trace_path, config.instrument);
  DualOptions opts;
  opts.stats = &stats;
  if (trace.active()) {
    opts.on_iteration = [&](const DualIterationEvent& event) {
      std::optional<double> phi;
      if (g.vertex_count() <= kMaxExactTraceVertices)
        phi = solve_exact(*event.system, 1.0).energy;
      trace.record(event.iteration, event.mu_after, event.max_congestion, phi, std::nullopt,
                   std::nullopt);
    };
  }

  long iterations = 0;
  std::optional<Cut> cut;
  if (config.flow_value) {
    report.target_flow = *config.flow_value;
    DualCutResult result = dual_cut(g, *config.flow_value, config.epsilon, opts);
    iterations = result.iterations;
    cut = std::move(result.cut);
    if (!cut) {
      report.status = RunStatus::algorithm_fail;
      report.error = "no cut below the capacity threshold within the iteration budget";
    }
  } else {
    DualSearchResult result = dual_binary_search(g, config.epsilon, opts);
    cut = std::move(result.cut);
    iterations = result.probes;
  }
  if (cut) report.cut_capacity = cut->capacity;
  report.iterations = iterations;
  report.oracle_calls = stats.systems;
  report.linear_solves = stats.systems;
}

}  // namespace

RunReport run(const RunConfig& config, const Graph& g) {
  RunReport report;
  report.algorithm = algorithm_name(config.algorithm);
  report.epsilon = config.epsilon;
  report.n = g.vertex_count();
  report.m = g.edge_count();

  auto start = std::chrono::steady_clock::now();
  try {
    switch (config.algorithm) {
      case RunConfig::Algorithm::exact: {
        ExactResult result = exact_maxflow(g);
        fill_flow_result(report, g, result.flow);
        report.cut_capacity = result.mincut.capacity;
        report.linear_solves = 0;
        report.oracle_calls = 0;
        report.iterations = 0;
        break;
      }
      case RunConfig::Algorithm::simple:
      case RunConfig::Algorithm::improved:
        run_flow_algorithm(config, g, report);
        break;
      case RunConfig::Algorithm::cut:
        run_cut_algorithm(config, g, report);
        break;
    }
  } catch (const DisconnectedError& err) {
    report.status = RunStatus::disconnected;
    report.error = err.what();
  }
  auto stop = std::chrono::steady_clock::now();
  report.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  return report;
}

}  // namespace eflow
