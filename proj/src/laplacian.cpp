#include "eflow/laplacian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace eflow {

ResistanceVector::ResistanceVector(std::vector<double> r) : r_(std::move(r)) { validate(); }

ResistanceVector::ResistanceVector(std::vector<double> r, std::vector<std::uint8_t> live)
    : r_(std::move(r)), live_(std::move(live)) {
  if (!live_.empty() && live_.size() != r_.size())
    throw std::invalid_argument("live mask size does not match resistance vector");
  validate();
}

ResistanceVector ResistanceVector::uniform(int m, double r) {
  return ResistanceVector(std::vector<double>(static_cast<std::size_t>(m), r));
}

void ResistanceVector::validate() {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  live_count_ = 0;
  for (EdgeId e = 0; e < size(); ++e) {
    if (!is_live(e)) continue;
    double r = r_[static_cast<std::size_t>(e)];
    if (!(r > 0.0) || !std::isfinite(r))
      throw std::invalid_argument("resistance of edge " + std::to_string(e) +
                                  " must be positive and finite");
    lo = std::min(lo, r);
    hi = std::max(hi, r);
    ++live_count_;
  }
  ratio_ = live_count_ > 0 ? hi / lo : 1.0;
}

LaplacianSystem::LaplacianSystem(const Graph& g, ResistanceVector r)
    : g_(&g), r_(std::move(r)) {
  if (r_.size() != g.edge_count())
    throw std::invalid_argument("resistance vector size does not match edge count");
  conductance_.assign(static_cast<std::size_t>(g.edge_count()), 0.0);
  weighted_degree_.assign(static_cast<std::size_t>(g.vertex_count()), 0.0);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!r_.is_live(e)) continue;
    double c = 1.0 / r_.at(e);
    conductance_[static_cast<std::size_t>(e)] = c;
    weighted_degree_[static_cast<std::size_t>(g.edge(e).tail)] += c;
    weighted_degree_[static_cast<std::size_t>(g.edge(e).head)] += c;
  }
}

LaplacianSystem assemble(const Graph& g, ResistanceVector r) {
  return LaplacianSystem(g, std::move(r));
}

namespace {

// BFS over live edges from every root in `roots` order, then remaining
// vertices; fills parents for spanning-forest use.
struct BfsForest {
  std::vector<int> parent_vertex;  // -1 for roots
  std::vector<EdgeId> parent_edge;
  std::vector<VertexId> order;     // BFS visit order, roots first
  std::vector<std::uint8_t> component_of_first_root;
};

BfsForest bfs_forest(const Graph& g, const ResistanceVector* live, VertexId first_root) {
  int n = g.vertex_count();
  BfsForest f;
  f.parent_vertex.assign(static_cast<std::size_t>(n), -2);  // -2 = unvisited
  f.parent_edge.assign(static_cast<std::size_t>(n), -1);
  f.order.reserve(static_cast<std::size_t>(n));
  f.component_of_first_root.assign(static_cast<std::size_t>(n), 0);

  auto bfs_from = [&](VertexId root, bool mark) {
    f.parent_vertex[static_cast<std::size_t>(root)] = -1;
    f.order.push_back(root);
    if (mark) f.component_of_first_root[static_cast<std::size_t>(root)] = 1;
    std::queue<VertexId> q;
    q.push(root);
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop();
      for (auto [w, e] : g.adjacency()[static_cast<std::size_t>(v)]) {
        if (live && !live->is_live(e)) continue;
        if (f.parent_vertex[static_cast<std::size_t>(w)] != -2) continue;
        f.parent_vertex[static_cast<std::size_t>(w)] = v;
        f.parent_edge[static_cast<std::size_t>(w)] = e;
        f.order.push_back(w);
        if (mark) f.component_of_first_root[static_cast<std::size_t>(w)] = 1;
        q.push(w);
      }
    }
  };

  bfs_from(first_root, true);
  for (VertexId v = 0; v < n; ++v)
    if (f.parent_vertex[static_cast<std::size_t>(v)] == -2) bfs_from(v, false);
  return f;
}

// In-place Gaussian elimination with partial pivoting; returns x for A x = b.
std::vector<double> dense_solve(std::vector<std::vector<double>>& a, std::vector<double> b) {
  const int k = static_cast<int>(b.size());
  for (int col = 0; col < k; ++col) {
    int pivot = col;
    for (int row = col + 1; row < k; ++row)
      if (std::abs(a[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)]) >
          std::abs(a[static_cast<std::size_t>(pivot)][static_cast<std::size_t>(col)]))
        pivot = row;
    if (std::abs(a[static_cast<std::size_t>(pivot)][static_cast<std::size_t>(col)]) < 1e-300)
      throw NonConvergenceError("grounded Laplacian is numerically singular");
    std::swap(a[static_cast<std::size_t>(pivot)], a[static_cast<std::size_t>(col)]);
    std::swap(b[static_cast<std::size_t>(pivot)], b[static_cast<std::size_t>(col)]);
    const double inv = 1.0 / a[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
    for (int row = col + 1; row < k; ++row) {
      double factor = a[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] * inv;
      if (factor == 0.0) continue;
      for (int j = col; j < k; ++j)
        a[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)] -=
            factor * a[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)];
      b[static_cast<std::size_t>(row)] -= factor * b[static_cast<std::size_t>(col)];
    }
  }
  std::vector<double> x(static_cast<std::size_t>(k), 0.0);
  for (int row = k - 1; row >= 0; --row) {
    double sum = b[static_cast<std::size_t>(row)];
    for (int j = row + 1; j < k; ++j)
      sum -= a[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)] *
             x[static_cast<std::size_t>(j)];
    x[static_cast<std::size_t>(row)] =
        sum / a[static_cast<std::size_t>(row)][static_cast<std::size_t>(row)];
  }
  return x;
}

FlowVector potential_flow(const LaplacianSystem& sys, const PotentialVector& phi) {
  const Graph& g = sys.graph();
  FlowVector f(static_cast<std::size_t>(g.edge_count()), 0.0);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    double c = sys.conductance(e);
    if (c == 0.0) continue;
    const EdgeSpec& spec = g.edge(e);
    f[static_cast<std::size_t>(e)] = c * (phi[static_cast<std::size_t>(spec.tail)] -
                                          phi[static_cast<std::size_t>(spec.head)]);
  }
  return f;
}

double live_energy(const LaplacianSystem& sys, const FlowVector& f) {
  double total = 0.0;
  for (EdgeId e = 0; e < sys.graph().edge_count(); ++e) {
    if (!sys.resistances().is_live(e)) continue;
    double fe = f[static_cast<std::size_t>(e)];
    total += sys.resistances().at(e) * fe * fe;
  }
  return total;
}

}  // namespace

bool LaplacianSystem::connected_st() const {
  BfsForest f = bfs_forest(*g_, &r_, g_->source());
  return f.component_of_first_root[static_cast<std::size_t>(g_->sink())] != 0;
}

void LaplacianSystem::apply(std::span<const double> x, std::span<double> y) const {
  const Graph& g = *g_;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    y[static_cast<std::size_t>(v)] =
        weighted_degree_[static_cast<std::size_t>(v)] * x[static_cast<std::size_t>(v)];
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    double c = conductance_[static_cast<std::size_t>(e)];
    if (c == 0.0) continue;
    const EdgeSpec& spec = g.edge(e);
    y[static_cast<std::size_t>(spec.tail)] -= c * x[static_cast<std::size_t>(spec.head)];
    y[static_cast<std::size_t>(spec.head)] -= c * x[static_cast<std::size_t>(spec.tail)];
  }
}

std::vector<std::vector<double>> LaplacianSystem::dense() const {
  int n = g_->vertex_count();
  std::vector<std::vector<double>> a(static_cast<std::size_t>(n),
                                     std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (EdgeId e = 0; e < g_->edge_count(); ++e) {
    double c = conductance_[static_cast<std::size_t>(e)];
    if (c == 0.0) continue;
    auto i = static_cast<std::size_t>(g_->edge(e).tail);
    auto j = static_cast<std::size_t>(g_->edge(e).head);
    a[i][i] += c;
    a[j][j] += c;
    a[i][j] -= c;
    a[j][i] -= c;
  }
  return a;
}

ExactElectricalFlow solve_exact(const LaplacianSystem& sys, double F) {
  const Graph& g = sys.graph();
  BfsForest forest = bfs_forest(g, &sys.resistances(), g.source());
  if (!forest.component_of_first_root[static_cast<std::size_t>(g.sink())])
    throw DisconnectedError();

  // Ground the sink: map the s component minus t onto dense indices.
  std::vector<int> index(static_cast<std::size_t>(g.vertex_count()), -1);
  int k = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (v == g.sink() || !forest.component_of_first_root[static_cast<std::size_t>(v)]) continue;
    index[static_cast<std::size_t>(v)] = k++;
  }

  std::vector<std::vector<double>> a(static_cast<std::size_t>(k),
                                     std::vector<double>(static_cast<std::size_t>(k), 0.0));
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    double c = sys.conductance(e);
    if (c == 0.0) continue;
    int i = index[static_cast<std::size_t>(g.edge(e).tail)];
    int j = index[static_cast<std::size_t>(g.edge(e).head)];
    if (i >= 0) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] += c;
    if (j >= 0) a[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] += c;
    if (i >= 0 && j >= 0) {
      a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -= c;
      a[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] -= c;
    }
  }
  std::vector<double> b(static_cast<std::size_t>(k), 0.0);
  b[static_cast<std::size_t>(index[static_cast<std::size_t>(g.source())])] = F;

  std::vector<double> x = dense_solve(a, std::move(b));

  ExactElectricalFlow out;
  out.potentials.assign(static_cast<std::size_t>(g.vertex_count()), 0.0);
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (index[static_cast<std::size_t>(v)] >= 0)
      out.potentials[static_cast<std::size_t>(v)] =
          x[static_cast<std::size_t>(index[static_cast<std::size_t>(v)])];
  out.flow = potential_flow(sys, out.potentials);
  out.energy = live_energy(sys, out.flow);
  return out;
}

namespace {

FlowVector repair_against(const Graph& g, const ResistanceVector* live, FlowVector raw,
                          double F) {
  if (static_cast<int>(raw.size()) != g.edge_count())
    throw std::invalid_argument("flow vector size does not match edge count");
  BfsForest forest = bfs_forest(g, live, g.source());
  if (!forest.component_of_first_root[static_cast<std::size_t>(g.sink())])
    throw DisconnectedError();

  // Residual demand per vertex; the correction flow must have exactly this
  // divergence, which a one-pass subtree accumulation realizes on the forest.
  DivergenceVector deficit = divergence(g, raw);
  double scale = std::abs(F);
  for (double& d : deficit) {
    scale = std::max(scale, std::abs(d));
    d = -d;
  }
  deficit[static_cast<std::size_t>(g.source())] += F;
  deficit[static_cast<std::size_t>(g.sink())] -= F;

  for (auto it = forest.order.rbegin(); it != forest.order.rend(); ++it) {
    VertexId v = *it;
    int p = forest.parent_vertex[static_cast<std::size_t>(v)];
    if (p < 0) {
      // Forest root: its subtree demand must vanish, or the raw flow moves
      // demand between disconnected components and no repair exists.
      if (std::abs(deficit[static_cast<std::size_t>(v)]) > 1e-6 * (scale + 1.0))
        throw std::invalid_argument("raw flow carries demand across disconnected components");
      continue;
    }
    double send = deficit[static_cast<std::size_t>(v)];
    EdgeId e = forest.parent_edge[static_cast<std::size_t>(v)];
    if (g.edge(e).tail == v)
      raw[static_cast<std::size_t>(e)] += send;
    else
      raw[static_cast<std::size_t>(e)] -= send;
    deficit[static_cast<std::size_t>(p)] += send;
  }
  return raw;
}

}  // namespace

FlowVector repair_flow(const Graph& g, const FlowVector& raw, double F) {
  return repair_against(g, nullptr, raw, F);
}

FlowVector repair_flow(const LaplacianSystem& sys, const FlowVector& raw, double F) {
  return repair_against(sys.graph(), &sys.resistances(), raw, F);
}

Certificate certify(const LaplacianSystem& sys, const FlowVector& flow,
                    const PotentialVector& potentials, double F) {
  const Graph& g = sys.graph();
  double drop = potentials[static_cast<std::size_t>(g.source())] -
                potentials[static_cast<std::size_t>(g.sink())];
  double dirichlet = 0.0;  // sum (phi_u - phi_v)^2 / r_e over live edges
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    double c = sys.conductance(e);
    if (c == 0.0) continue;
    const EdgeSpec& spec = g.edge(e);
    double d = potentials[static_cast<std::size_t>(spec.tail)] -
               potentials[static_cast<std::size_t>(spec.head)];
    dirichlet += c * d * d;
  }
  if (drop == 0.0 || dirichlet <= 0.0)
    return {0.0, std::numeric_limits<double>::infinity()};
  Certificate cert;
  cert.lower_bound = (F * drop) * (F * drop) / dirichlet;
  cert.gap = std::max(0.0, live_energy(sys, flow) / cert.lower_bound - 1.0);
  return cert;
}

namespace {

struct PcgResult {
  bool reached_tol = false;
  bool stagnated = false;
  long iterations = 0;
};

// Preconditioned CG on the grounded operator P L P (P zeroes the sink row and
// everything outside the s component). Continues from the incoming x.
PcgResult run_pcg(const LaplacianSystem& sys, const std::vector<std::uint8_t>& in_comp,
                  std::span<const double> b, std::vector<double>& x, double rel_tol,
                  long max_iters) {
  const Graph& g = sys.graph();
  const int n = g.vertex_count();
  const VertexId t = g.sink();

  auto project = [&](std::vector<double>& v) {
    for (VertexId u = 0; u < n; ++u)
      if (u == t || !in_comp[static_cast<std::size_t>(u)]) v[static_cast<std::size_t>(u)] = 0.0;
  };

  std::vector<double> inv_diag(static_cast<std::size_t>(n), 0.0);
  for (VertexId u = 0; u < n; ++u) {
    double d = sys.weighted_degree(u);
    if (u != t && in_comp[static_cast<std::size_t>(u)] && d > 0.0)
      inv_diag[static_cast<std::size_t>(u)] = 1.0 / d;
  }

  double b_norm = 0.0;
  for (double v : b) b_norm += v * v;
  b_norm = std::sqrt(b_norm);
  if (b_norm == 0.0) return {true, false, 0};
  const double abs_tol = rel_tol * b_norm;

  std::vector<double> r(static_cast<std::size_t>(n)), z(static_cast<std::size_t>(n)),
      p(static_cast<std::size_t>(n)), q(static_cast<std::size_t>(n));

  auto refresh_residual = [&]() {
    sys.apply(x, r);
    for (VertexId u = 0; u < n; ++u)
      r[static_cast<std::size_t>(u)] = b[static_cast<std::size_t>(u)] - r[static_cast<std::size_t>(u)];
    project(r);
  };

  project(x);
  refresh_residual();

  double rz = 0.0;
  for (VertexId u = 0; u < n; ++u) {
    z[static_cast<std::size_t>(u)] = inv_diag[static_cast<std::size_t>(u)] * r[static_cast<std::size_t>(u)];
    rz += r[static_cast<std::size_t>(u)] * z[static_cast<std::size_t>(u)];
  }
  p = z;

  PcgResult out;
  double best_norm = std::numeric_limits<double>::infinity();
  long since_improvement = 0;
  for (long it = 0; it < max_iters; ++it) {
    double r_norm = 0.0;
    for (double v : r) r_norm += v * v;
    r_norm = std::sqrt(r_norm);
    if (r_norm <= abs_tol) {
      out.reached_tol = true;
      return out;
    }
    if (r_norm < 0.99 * best_norm) {
      best_norm = r_norm;
      since_improvement = 0;
    } else if (++since_improvement > 80) {
      out.stagnated = true;
      return out;
    }

    sys.apply(p, q);
    q[static_cast<std::size_t>(t)] = 0.0;
    double pq = 0.0;
    for (VertexId u = 0; u < n; ++u)
      pq += p[static_cast<std::size_t>(u)] * q[static_cast<std::size_t>(u)];
    if (!(pq > 0.0)) {
      out.stagnated = true;  // numerical breakdown near machine precision
      return out;
    }
    double alpha = rz / pq;
    for (VertexId u = 0; u < n; ++u) {
      x[static_cast<std::size_t>(u)] += alpha * p[static_cast<std::size_t>(u)];
      r[static_cast<std::size_t>(u)] -= alpha * q[static_cast<std::size_t>(u)];
    }
    ++out.iterations;
    if ((it & 63) == 63) refresh_residual();

    double rz_next = 0.0;
    for (VertexId u = 0; u < n; ++u) {
      z[static_cast<std::size_t>(u)] =
          inv_diag[static_cast<std::size_t>(u)] * r[static_cast<std::size_t>(u)];
      rz_next += r[static_cast<std::size_t>(u)] * z[static_cast<std::size_t>(u)];
    }
    double beta = rz_next / rz;
    rz = rz_next;
    for (VertexId u = 0; u < n; ++u)
      p[static_cast<std::size_t>(u)] = z[static_cast<std::size_t>(u)] + beta * p[static_cast<std::size_t>(u)];
  }
  return out;
}

}  // namespace

CertifiedElectricalFlow solve_approx(const LaplacianSystem& sys, double F, double delta,
                                     const PotentialVector* warm_start, SolveStats* stats) {
  if (!(delta > 0.0 && delta <= 1.0))
    throw std::invalid_argument("delta must lie in (0, 1]");
  const Graph& g = sys.graph();
  const int n = g.vertex_count();

  BfsForest forest = bfs_forest(g, &sys.resistances(), g.source());
  if (!forest.component_of_first_root[static_cast<std::size_t>(g.sink())])
    throw DisconnectedError();
  const std::vector<std::uint8_t>& in_comp = forest.component_of_first_root;

  const double m_live = static_cast<double>(sys.live_edge_count());
  const double big_r = sys.resistance_ratio();

  // A gap of delta/4 certifies the (1+delta) energy bound outright; the
  // squared budgets keep the per-edge energy and potential-drop conditions
  // within their much tighter targets. The floor is the resolution limit of
  // the gap measurement in doubles.
  const double edge_budget = delta / (2.0 * m_live * big_r);
  const double drop_budget = delta / (12.0 * n * m_live * big_r);
  double gap_target = std::min(
      {delta / 4.0, edge_budget * edge_budget / 16.0, drop_budget * drop_budget / 4.0});
  gap_target = std::max(gap_target, 5e-13);

  // Residual mapping derived from the flow-repair analysis, clamped to a
  // usable range; serves only as the starting tolerance of the ladder.
  double tol = delta / (12.0 * std::pow(static_cast<double>(n), 4.0) * m_live *
                        std::pow(big_r, 1.5));
  tol = std::clamp(tol, 1e-12, 1e-4);

  std::vector<double> b(static_cast<std::size_t>(n), 0.0);
  b[static_cast<std::size_t>(g.source())] = F;

  std::vector<double> x(static_cast<std::size_t>(n), 0.0);
  if (warm_start && warm_start->size() == x.size()) x = *warm_start;

  if (stats) ++stats->systems;

  CertifiedElectricalFlow out;
  const long iteration_budget = 6L * n + 100;
  for (int attempt = 0; attempt < 12; ++attempt) {
    PcgResult pcg = run_pcg(sys, in_comp, b, x, tol, iteration_budget);
    out.cg_iterations += pcg.iterations;
    if (stats) stats->cg_iterations += pcg.iterations;

    out.potentials = x;
    out.flow = repair_flow(sys, potential_flow(sys, out.potentials), F);
    Certificate cert = certify(sys, out.flow, out.potentials, F);
    out.energy = live_energy(sys, out.flow);
    out.lower_bound = cert.lower_bound;
    out.delta_achieved = cert.gap;
    if (cert.gap <= gap_target) return out;

    if (pcg.stagnated && tol <= 1e-15) break;
    tol = std::max(tol * 1e-3, 1e-16);
  }
  throw NonConvergenceError("electrical solve failed to certify gap target " +
                            std::to_string(gap_target) + "; achieved " +
                            std::to_string(out.delta_achieved));
}

}  // namespace eflow
