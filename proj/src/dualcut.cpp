#include "eflow/dualcut.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace eflow {

DualParameters dual_parameters(int m, double eps) {
  DualParameters p;
  p.rho = 3.0 * std::cbrt(static_cast<double>(m)) * std::pow(eps, -2.0 / 3.0);
  double n_raw = 5.0 * std::pow(eps, -8.0 / 3.0) * std::cbrt(static_cast<double>(m)) *
                 std::log(static_cast<double>(m));
  p.iterations = std::max(1L, static_cast<long>(std::ceil(n_raw)));
  p.delta = eps * eps;
  return p;
}

DualState dual_state_init(const Graph& g, double eps, std::optional<double> rho_override) {
  if (!(eps > 0.0 && eps < 1.0 / 7.0))
    throw std::invalid_argument("eps must lie in (0, 1/7) for the dual algorithm");
  DualState state;
  state.weights = WeightVector::ones(g.edge_count());
  state.params = dual_parameters(g.edge_count(), eps);
  if (rho_override) state.params.rho = *rho_override;
  return state;
}

void dual_update(DualState& state, const FlowVector& f, const Graph& g, double eps) {
  const double mu = state.weights.total;
  const double rho = state.params.rho;
  const double additive = eps * eps * mu / (g.edge_count() * rho);
  CongestionProfile cong = congestion(g, f);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    double& w = state.weights.w[static_cast<std::size_t>(e)];
    w += (eps / rho) * cong.per_edge[static_cast<std::size_t>(e)] * w + additive;
  }
  state.weights.recompute_total();
  ++state.iteration;
}

SweepCutResult sweep_cut(const Graph& g, const PotentialVector& phi) {
  const VertexId s = g.source();
  const VertexId t = g.sink();
  if (phi[static_cast<std::size_t>(s)] == phi[static_cast<std::size_t>(t)])
    throw std::invalid_argument("degenerate potentials: no s-t drop to sweep");

  // Candidate thresholds are the distinct potential values in [phi_t, phi_s);
  // S_x = {v : phi_v > x} so a threshold equal to a vertex's potential puts
  // that vertex on the sink side.
  std::vector<double> levels;
  levels.reserve(phi.size());
  for (double v : phi)
    if (v >= phi[static_cast<std::size_t>(t)] && v < phi[static_cast<std::size_t>(s)])
      levels.push_back(v);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  SweepCutResult best;
  best.capacity = std::numeric_limits<double>::infinity();
  int best_side_size = std::numeric_limits<int>::max();
  Cut candidate;
  candidate.side_s.resize(phi.size());
  for (double x : levels) {
    int side_size = 0;
    for (std::size_t v = 0; v < phi.size(); ++v) {
      candidate.side_s[v] = phi[v] > x ? 1 : 0;
      side_size += candidate.side_s[v];
    }
    double capacity = cut_capacity(g, candidate);
    if (capacity < best.capacity ||
        (capacity == best.capacity && side_size < best_side_size)) {
      best.capacity = capacity;
      best.threshold = x;
      best.cut.side_s = candidate.side_s;
      best_side_size = side_size;
    }
  }
  best.cut.capacity = best.capacity;
  return best;
}

namespace {

PotentialVector rescale_potentials(const PotentialVector& phi, VertexId s, VertexId t) {
  double drop = phi[static_cast<std::size_t>(s)] - phi[static_cast<std::size_t>(t)];
  if (drop == 0.0)
    throw std::invalid_argument("degenerate potentials: no s-t drop to rescale");
  PotentialVector out(phi.size());
  for (std::size_t v = 0; v < phi.size(); ++v)
    out[v] = (phi[v] - phi[static_cast<std::size_t>(t)]) / drop;
  return out;
}

}  // namespace

DualCutResult dual_cut(const Graph& g, double F, double eps, const DualOptions& options) {
  DualState state = dual_state_init(g, eps, options.rho_override);
  const double capacity_bound = F / (1.0 - 7.0 * eps);
  PotentialVector warm;

  DualCutResult result;
  for (long i = 0; i < state.params.iterations; ++i) {
    std::vector<double> r(static_cast<std::size_t>(g.edge_count()));
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      double u = static_cast<double>(g.edge(e).capacity);
      r[static_cast<std::size_t>(e)] = state.weights[e] / (u * u);
    }
    LaplacianSystem sys = assemble(g, ResistanceVector(std::move(r)));
    CertifiedElectricalFlow solved = solve_approx(sys, F, state.params.delta, &warm,
                                                  options.stats);
    warm = solved.potentials;

    double mu_before = state.weights.total;
    CongestionProfile cong = congestion(g, solved.flow);
    dual_update(state, solved.flow, g, eps);

    PotentialVector scaled = rescale_potentials(solved.potentials, g.source(), g.sink());
    SweepCutResult sweep = sweep_cut(g, scaled);
    ++result.iterations;

    if (options.on_iteration) {
      double floor_ratio = std::numeric_limits<double>::infinity();
      for (double w : state.weights.w)
        floor_ratio = std::min(floor_ratio, w / state.weights.total);
      DualIterationEvent event;
      event.iteration = static_cast<int>(i + 1);
      event.system = &sys;
      event.solution = &solved;
      event.scaled_potentials = &scaled;
      event.sweep = &sweep;
      event.weights_after = &state.weights;
      event.mu_before = mu_before;
      event.mu_after = state.weights.total;
      event.max_congestion = cong.max;
      event.weight_floor_ratio = floor_ratio;
      options.on_iteration(event);
    }

    if (sweep.capacity < capacity_bound) {
      result.cut = std::move(sweep.cut);
      return result;
    }
  }
  return result;
}

DualSearchResult dual_binary_search(const Graph& g, double eps, const DualOptions& options) {
  if (!(eps > 0.0 && eps < 1.0 / 7.0))
    throw std::invalid_argument("eps must lie in (0, 1/7) for the dual algorithm");
  const double bottleneck = max_bottleneck_path(g);
  const double step = 1.0 + eps / 8.0;
  const int top =
      std::max(0, static_cast<int>(std::ceil(std::log(static_cast<double>(g.edge_count())) /
                                             std::log(step))));

  DualSearchResult result;
  std::optional<Cut> best;
  auto probe = [&](int k) -> bool {
    ++result.probes;
    DualCutResult r = dual_cut(g, bottleneck * std::pow(step, k), eps, options);
    if (r.failed()) return false;
    if (!best || r.cut->capacity < best->capacity) best = std::move(r.cut);
    return true;
  };

  // F = mB always succeeds; search downward for the smallest succeeding
  // target, keeping the best cut seen at any probe.
  if (!probe(top))
    throw std::logic_error("dual cut probe failed at the capacity upper bound");
  if (probe(0)) {
    result.cut = *best;
    return result;
  }
  int lo = 0, hi = top;  // lo failed, hi succeeded
  while (hi - lo > 1) {
    int mid = lo + (hi - lo) / 2;
    if (probe(mid))
      hi = mid;
    else
      lo = mid;
  }
  result.cut = *best;
  return result;
}

}  // namespace eflow
