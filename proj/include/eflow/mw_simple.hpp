#pragma once

#include <functional>
#include <optional>

#include "eflow/laplacian.hpp"

namespace eflow {

// Edge weights with w_e >= 1; the cached total is recomputed from scratch on
// every update so it never drifts from the entries.
struct WeightVector {
  std::vector<double> w;
  double total = 0.0;

  static WeightVector ones(int m);
  explicit WeightVector(std::vector<double> values);
  WeightVector() = default;

  int size() const { return static_cast<int>(w.size()); }
  double operator[](EdgeId e) const { return w[static_cast<std::size_t>(e)]; }
  void recompute_total();
};

// nullopt means "fail": the requested value exceeds the maximum flow.
using OracleOutcome = std::optional<FlowVector>;
using OracleFn =
    std::function<OracleOutcome(const Graph&, const WeightVector&, double F, double eps)>;

// Width of the plain electrical-flow oracle: 3 sqrt(m / eps).
double oracle_width(int m, double eps);

// r_e = (w_e + eps |w|_1 / (3m)) / u_e^2, optionally restricted to live
// edges; m and |w|_1 always refer to the full edge set.
ResistanceVector oracle_resistances(const Graph& g, const WeightVector& w, double eps);
ResistanceVector oracle_resistances(const Graph& g, const WeightVector& w, double eps,
                                    std::vector<std::uint8_t> live);

// One electrical-flow query: solves a certified delta = eps/3 flow of value F
// under the oracle resistances and fails iff its energy exceeds
// (1 + eps) |w|_1. On success the flow has value F, weighted congestion at
// most (1 + eps) |w|_1, and max congestion at most 3 sqrt(m / eps).
OracleOutcome simple_oracle(const Graph& g, const WeightVector& w, double F, double eps,
                            SolveStats* stats = nullptr, PotentialVector* warm = nullptr);

// w_e <- w_e (1 + (eps / rho) cong_f(e)).
WeightVector update_weights(const WeightVector& w, const FlowVector& f, const Graph& g,
                            double eps, double rho);

// Per-iteration record kept when instrumenting a weight-update run.
struct MwIterationRecord {
  double mu_before = 0.0;        // |w|_1 entering the iteration
  double mu_after = 0.0;         // |w|_1 after the update
  double max_congestion = 0.0;
  double weighted_congestion = 0.0;  // sum_e w_e cong(e) under the entering weights
};

struct MwInstrumentation {
  std::vector<MwIterationRecord> iterations;
};

struct MwOptions {
  double rho = 0.0;  // oracle width; drives N and the update size
  bool instrument = false;
  MwInstrumentation* out = nullptr;
  SolveStats* stats = nullptr;
  long* oracle_calls = nullptr;
};

// The weight-update driver: N = max(1, ceil(2 rho ln m / eps^2)) oracle
// queries, failing through on oracle failure, returning the average flow
// scaled by (1-eps)^2 / (1+eps). In instrumented mode the total-weight growth
// bound, the per-edge weight lower bound, and the oracle success conditions
// are asserted every iteration (1e-9 relative slack).
OracleOutcome mw_maxflow(const Graph& g, double F, double eps, const OracleFn& oracle,
                         const MwOptions& options);

// mw_maxflow wired to simple_oracle with the matching width, threading warm
// potentials between iterations.
OracleOutcome mw_maxflow_simple(const Graph& g, double F, double eps,
                                const MwOptions& options = {});

// Maximum over s-t paths of the minimum capacity along the path (B); the max
// flow lies in [B, mB].
double max_bottleneck_path(const Graph& g);

struct ScaleInfo {
  double factor = 1.0;                // normalized caps = round(original * factor)
  std::vector<EdgeId> original_edge;  // normalized edge id -> original edge id
  int original_edge_count = 0;
  bool identity = true;

  double map_back_value(double v) const { return v / factor; }
  FlowVector map_back_flow(const FlowVector& f) const;
};

// Capacity preprocessing: caps above mB are clipped to mB, edges below
// eps B / (2m) are removed (costing at most eps B / 2 <= eps F* / 2 of flow).
// For integral capacities this already bounds the capacity ratio by
// 2 m^2 / eps, so the rescale step stays a unit change and factor == 1.
std::pair<Graph, ScaleInfo> normalize_capacities(const Graph& g, double eps);

using MaxflowFn = std::function<OracleOutcome(const Graph&, double F, double eps)>;

struct MaxflowSearchResult {
  FlowVector flow;        // on the original graph
  double value = 0.0;     // its value on the original graph
  double probe_value = 0.0;  // highest non-failing target F (normalized units)
  int probes = 0;
};

// Normalizes capacities, then binary-searches F over [B, mB] in multiplicative
// (1 + eps/8) steps, running the supplied fixed-F algorithm at each probe;
// returns the flow of the largest non-failing probe mapped back to the
// original graph. Composed guarantee: value >= (1 - 5 eps) F*.
MaxflowSearchResult binary_search_maxflow(const Graph& g, double eps,
                                          const MaxflowFn& algorithm);

}  // namespace eflow
