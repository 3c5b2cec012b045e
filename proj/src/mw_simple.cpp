#include "eflow/mw_simple.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <queue>

namespace eflow {

WeightVector WeightVector::ones(int m) {
  WeightVector out;
  out.w.assign(static_cast<std::size_t>(m), 1.0);
  out.total = static_cast<double>(m);
  return out;
}

WeightVector::WeightVector(std::vector<double> values) : w(std::move(values)) {
  for (std::size_t i = 0; i < w.size(); ++i)
    if (!(w[i] >= 1.0))
      throw std::invalid_argument("edge weight " + std::to_string(i) + " is below 1");
  recompute_total();
}

void WeightVector::recompute_total() {
  total = 0.0;
  for (double v : w) total += v;
}

double oracle_width(int m, double eps) { return 3.0 * std::sqrt(m / eps); }

namespace {

ResistanceVector build_oracle_resistances(const Graph& g, const WeightVector& w, double eps,
                                          std::vector<std::uint8_t> live) {
  if (w.size() != g.edge_count())
    throw std::invalid_argument("weight vector size does not match edge count");
  const double uniform_part = eps * w.total / (3.0 * g.edge_count());
  std::vector<double> r(static_cast<std::size_t>(g.edge_count()), 1.0);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!live.empty() && !live[static_cast<std::size_t>(e)]) continue;
    double u = static_cast<double>(g.edge(e).capacity);
    r[static_cast<std::size_t>(e)] = (w[e] + uniform_part) / (u * u);
  }
  ResistanceVector out(std::move(r), std::move(live));

  // Sanity bound on the conditioning implied by the resistance formula:
  // R <= U^2 (3m + eps) / eps for weights with w_e >= 1.
  double u_ratio = g.capacity_ratio();
  double limit = u_ratio * u_ratio * (3.0 * g.edge_count() + eps) / eps;
  if (out.ratio() > limit * (1.0 + 1e-9))
    throw std::logic_error("oracle resistance ratio exceeds its conditioning bound");
  return out;
}

}  // namespace

ResistanceVector oracle_resistances(const Graph& g, const WeightVector& w, double eps) {
  return build_oracle_resistances(g, w, eps, {});
}

ResistanceVector oracle_resistances(const Graph& g, const WeightVector& w, double eps,
                                    std::vector<std::uint8_t> live) {
  return build_oracle_resistances(g, w, eps, std::move(live));
}

OracleOutcome simple_oracle(const Graph& g, const WeightVector& w, double F, double eps,
                            SolveStats* stats, PotentialVector* warm) {
  if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("eps must lie in (0, 1/2)");
  LaplacianSystem sys = assemble(g, oracle_resistances(g, w, eps));

  CertifiedElectricalFlow solved;
  try {
    solved = solve_approx(sys, F, eps / 3.0, warm, stats);
  } catch (const DisconnectedError&) {
    return std::nullopt;
  }
  if (warm) *warm = solved.potentials;
  if (solved.energy > (1.0 + eps) * w.total) return std::nullopt;
  return std::move(solved.flow);
}

namespace {

void apply_congestion_update(WeightVector& w, const std::vector<double>& cong, double eps,
                             double rho) {
  for (std::size_t e = 0; e < w.w.size(); ++e) w.w[e] *= 1.0 + (eps / rho) * cong[e];
  w.recompute_total();
}

}  // namespace

WeightVector update_weights(const WeightVector& w, const FlowVector& f, const Graph& g,
                            double eps, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
  WeightVector out = w;
  apply_congestion_update(out, congestion(g, f).per_edge, eps, rho);
  return out;
}

namespace {

long mw_iteration_count(int m, double eps, double rho) {
  double n_raw = 2.0 * rho * std::log(static_cast<double>(m)) / (eps * eps);
  return std::max(1L, static_cast<long>(std::ceil(n_raw)));
}

void check_oracle_conditions(const Graph& g, const WeightVector& w, const FlowVector& f,
                             double F, double eps, double rho, double weighted_cong,
                             double max_cong) {
  double value = flow_value(g, f);
  if (std::abs(value - F) > 1e-6 * std::max(1.0, std::abs(F)))
    throw std::logic_error("oracle flow value off target: " + std::to_string(value));
  if (weighted_cong > (1.0 + eps) * w.total * (1.0 + 1e-9) + 1e-6)
    throw std::logic_error("oracle weighted congestion bound violated");
  if (max_cong > rho * (1.0 + 1e-9) + 1e-6)
    throw std::logic_error("oracle width bound violated");
}

}  // namespace

OracleOutcome mw_maxflow(const Graph& g, double F, double eps, const OracleFn& oracle,
                         const MwOptions& options) {
  if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("eps must lie in (0, 1/2)");
  if (!(options.rho > 0.0)) throw std::invalid_argument("oracle width must be positive");
  const int m = g.edge_count();
  const double rho = options.rho;
  const long N = mw_iteration_count(m, eps, rho);

  WeightVector w = WeightVector::ones(m);
  FlowVector sum(static_cast<std::size_t>(m), 0.0);
  std::vector<double> cumulative_congestion;
  if (options.instrument)
    cumulative_congestion.assign(static_cast<std::size_t>(m), 0.0);

  for (long i = 0; i < N; ++i) {
    if (options.oracle_calls) ++*options.oracle_calls;
    OracleOutcome result = oracle(g, w, F, eps);
    if (!result) return std::nullopt;
    const FlowVector& f = *result;

    CongestionProfile cong = congestion(g, f);
    double mu_before = w.total;
    double weighted = 0.0;
    for (EdgeId e = 0; e < m; ++e)
      weighted += w[e] * cong.per_edge[static_cast<std::size_t>(e)];

    WeightVector next = w;
    apply_congestion_update(next, cong.per_edge, eps, rho);

    if (options.instrument) {
      check_oracle_conditions(g, w, f, F, eps, rho, weighted, cong.max);
      // Total-weight growth: mu_{i+1} <= mu_i exp((1+eps) eps / rho).
      if (next.total > mu_before * std::exp((1.0 + eps) * eps / rho) * (1.0 + 1e-9))
        throw std::logic_error("total weight grew past its per-iteration bound");
      // Per-edge weight floor against the cumulative congestion.
      for (EdgeId e = 0; e < m; ++e) {
        cumulative_congestion[static_cast<std::size_t>(e)] +=
            cong.per_edge[static_cast<std::size_t>(e)];
        double floor = std::exp(((1.0 - eps) * eps / rho) *
                                cumulative_congestion[static_cast<std::size_t>(e)]);
        if (next.w[static_cast<std::size_t>(e)] < floor * (1.0 - 1e-9))
          throw std::logic_error("edge weight fell below its congestion floor");
      }
      if (options.out)
        options.out->iterations.push_back({mu_before, next.total, cong.max, weighted});
    }

    for (EdgeId e = 0; e < m; ++e)
      sum[static_cast<std::size_t>(e)] += f[static_cast<std::size_t>(e)];
    w = std::move(next);
  }

  const double scale = (1.0 - eps) * (1.0 - eps) / ((1.0 + eps) * static_cast<double>(N));
  for (double& v : sum) v *= scale;
  return sum;
}

OracleOutcome mw_maxflow_simple(const Graph& g, double F, double eps,
                                const MwOptions& options) {
  MwOptions opts = options;
  opts.rho = oracle_width(g.edge_count(), eps);
  auto warm = std::make_shared<PotentialVector>();
  SolveStats* stats = options.stats;
  return mw_maxflow(
      g, F, eps,
      [warm, stats](const Graph& gg, const WeightVector& ww, double FF, double ee) {
        return simple_oracle(gg, ww, FF, ee, stats, warm.get());
      },
      opts);
}

double max_bottleneck_path(const Graph& g) {
  // Prim-style widest path: grow the best-bottleneck frontier from s.
  std::vector<std::int64_t> best(static_cast<std::size_t>(g.vertex_count()), 0);
  std::priority_queue<std::pair<std::int64_t, VertexId>> heap;
  best[static_cast<std::size_t>(g.source())] = std::numeric_limits<std::int64_t>::max();
  heap.emplace(best[static_cast<std::size_t>(g.source())], g.source());
  while (!heap.empty()) {
    auto [width, v] = heap.top();
    heap.pop();
    if (width < best[static_cast<std::size_t>(v)]) continue;
    if (v == g.sink()) return static_cast<double>(width);
    for (auto [u, e] : g.adjacency()[static_cast<std::size_t>(v)]) {
      std::int64_t through = std::min(width, g.edge(e).capacity);
      if (through > best[static_cast<std::size_t>(u)]) {
        best[static_cast<std::size_t>(u)] = through;
        heap.emplace(through, u);
      }
    }
  }
  throw DisconnectedError();
}

FlowVector ScaleInfo::map_back_flow(const FlowVector& f) const {
  FlowVector out(static_cast<std::size_t>(original_edge_count), 0.0);
  for (std::size_t i = 0; i < original_edge.size(); ++i)
    out[static_cast<std::size_t>(original_edge[i])] = f[i] / factor;
  return out;
}

std::pair<Graph, ScaleInfo> normalize_capacities(const Graph& g, double eps) {
  const double bottleneck = max_bottleneck_path(g);
  const double m = static_cast<double>(g.edge_count());
  const std::int64_t clip =
      static_cast<std::int64_t>(std::min(m * bottleneck, 9.0e18));
  const double drop_below = eps * bottleneck / (2.0 * m);

  ScaleInfo info;
  info.original_edge_count = g.edge_count();
  std::vector<EdgeSpec> kept;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    EdgeSpec spec = g.edge(e);
    if (static_cast<double>(spec.capacity) < drop_below) {
      info.identity = false;
      continue;
    }
    if (spec.capacity > clip) {
      spec.capacity = clip;
      info.identity = false;
    }
    kept.push_back(spec);
    info.original_edge.push_back(e);
  }
  return {Graph(g.vertex_count(), std::move(kept), g.source(), g.sink()), info};
}

MaxflowSearchResult binary_search_maxflow(const Graph& g, double eps,
                                          const MaxflowFn& algorithm) {
  if (!(eps > 0.0 && eps < 0.5)) throw std::invalid_argument("eps must lie in (0, 1/2)");
  auto [gn, info] = normalize_capacities(g, eps);
  const double bottleneck = max_bottleneck_path(gn);
  const double step = 1.0 + eps / 8.0;
  const int top =
      std::max(0, static_cast<int>(std::ceil(std::log(static_cast<double>(gn.edge_count())) /
                                             std::log(step))));

  MaxflowSearchResult result;
  auto probe = [&](int k) -> OracleOutcome {
    ++result.probes;
    return algorithm(gn, bottleneck * std::pow(step, k), eps);
  };

  // The algorithm never fails for F <= F* and B <= F* <= mB, so the largest
  // non-failing grid point is found by bisection.
  FlowVector best_flow;
  int best_k = -1;
  if (OracleOutcome at_top = probe(top)) {
    best_flow = std::move(*at_top);
    best_k = top;
  } else {
    OracleOutcome at_bottom = probe(0);
    if (!at_bottom)
      throw std::logic_error("maximum-flow probe failed at the bottleneck lower bound");
    best_flow = std::move(*at_bottom);
    best_k = 0;
    int lo = 0, hi = top;  // lo succeeded, hi failed
    while (hi - lo > 1) {
      int mid = lo + (hi - lo) / 2;
      if (OracleOutcome at_mid = probe(mid)) {
        best_flow = std::move(*at_mid);
        best_k = mid;
        lo = mid;
      } else {
        hi = mid;
      }
    }
  }

  result.probe_value = bottleneck * std::pow(step, best_k);
  result.flow = info.map_back_flow(best_flow);
  result.value = flow_value(g, result.flow);
  return result;
}

}  // namespace eflow
