#include "eflow/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace eflow {

Graph::Graph(int n, std::vector<EdgeSpec> edges, VertexId s, VertexId t)
    : n_(n), edges_(std::move(edges)), s_(s), t_(t) {
  if (n_ < 2) throw std::invalid_argument("graph needs at least two vertices");
  if (s_ < 0 || s_ >= n_ || t_ < 0 || t_ >= n_)
    throw std::invalid_argument("source or sink id out of range");
  if (s_ == t_) throw std::invalid_argument("source and sink must differ");

  std::int64_t min_cap = std::numeric_limits<std::int64_t>::max();
  std::int64_t max_cap = 1;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const EdgeSpec& e = edges_[i];
    if (e.tail < 0 || e.tail >= n_ || e.head < 0 || e.head >= n_)
      throw std::invalid_argument("edge " + std::to_string(i) + " endpoint out of range");
    if (e.tail == e.head)
      throw std::invalid_argument("edge " + std::to_string(i) + " is a self-loop");
    if (e.capacity < 1)
      throw std::invalid_argument("edge " + std::to_string(i) + " has nonpositive capacity");
    min_cap = std::min(min_cap, e.capacity);
    max_cap = std::max(max_cap, e.capacity);
  }
  capacity_ratio_ = edges_.empty()
                        ? 1.0
                        : static_cast<double>(max_cap) / static_cast<double>(min_cap);

  adjacency_.assign(static_cast<std::size_t>(n_), {});
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const EdgeSpec& e = edges_[i];
    adjacency_[static_cast<std::size_t>(e.tail)].emplace_back(e.head, static_cast<EdgeId>(i));
    adjacency_[static_cast<std::size_t>(e.head)].emplace_back(e.tail, static_cast<EdgeId>(i));
  }
}

DivergenceVector divergence(const Graph& g, const FlowVector& f) {
  if (static_cast<int>(f.size()) != g.edge_count())
    throw std::invalid_argument("flow vector size does not match edge count");
  DivergenceVector div(static_cast<std::size_t>(g.vertex_count()), 0.0);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const EdgeSpec& spec = g.edge(e);
    div[static_cast<std::size_t>(spec.tail)] += f[static_cast<std::size_t>(e)];
    div[static_cast<std::size_t>(spec.head)] -= f[static_cast<std::size_t>(e)];
  }
  return div;
}

double flow_value(const Graph& g, const FlowVector& f) {
  DivergenceVector div = divergence(g, f);
  double value = div[static_cast<std::size_t>(g.source())];
  double scale = std::abs(value);
  for (double fe : f) scale = std::max(scale, std::abs(fe));
  const double tol = 1e-9 * scale + 1e-300;

  double worst = 0.0;
  VertexId worst_v = -1;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (v == g.source() || v == g.sink()) continue;
    double violation = std::abs(div[static_cast<std::size_t>(v)]);
    if (violation > worst) {
      worst = violation;
      worst_v = v;
    }
  }
  if (worst > tol)
    throw std::runtime_error("flow conservation violated at vertex " + std::to_string(worst_v) +
                             " by " + std::to_string(worst));
  return value;
}

CongestionProfile congestion(const Graph& g, const FlowVector& f) {
  if (static_cast<int>(f.size()) != g.edge_count())
    throw std::invalid_argument("flow vector size does not match edge count");
  CongestionProfile out;
  out.per_edge.resize(f.size());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    double c = std::abs(f[static_cast<std::size_t>(e)]) /
               static_cast<double>(g.edge(e).capacity);
    out.per_edge[static_cast<std::size_t>(e)] = c;
    if (c > out.max) {
      out.max = c;
      out.argmax = e;
    }
  }
  return out;
}

namespace {

void check_partition(const Graph& g, const Cut& c) {
  if (static_cast<int>(c.side_s.size()) != g.vertex_count())
    throw std::invalid_argument("cut side mask size does not match vertex count");
  if (!c.side_s[static_cast<std::size_t>(g.source())])
    throw std::invalid_argument("cut does not contain the source on its s side");
  if (c.side_s[static_cast<std::size_t>(g.sink())])
    throw std::invalid_argument("cut contains the sink on its s side");
}

}  // namespace

double cut_capacity(const Graph& g, const Cut& c) {
  check_partition(g, c);
  double total = 0.0;
  for (const EdgeSpec& e : g.edges()) {
    if (c.side_s[static_cast<std::size_t>(e.tail)] != c.side_s[static_cast<std::size_t>(e.head)])
      total += static_cast<double>(e.capacity);
  }
  return total;
}

double cut_crossing_flow(const Graph& g, const Cut& c, const FlowVector& f) {
  check_partition(g, c);
  if (static_cast<int>(f.size()) != g.edge_count())
    throw std::invalid_argument("flow vector size does not match edge count");
  double total = 0.0;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const EdgeSpec& spec = g.edge(e);
    bool tail_in = c.side_s[static_cast<std::size_t>(spec.tail)] != 0;
    bool head_in = c.side_s[static_cast<std::size_t>(spec.head)] != 0;
    if (tail_in && !head_in) total += f[static_cast<std::size_t>(e)];
    if (!tail_in && head_in) total -= f[static_cast<std::size_t>(e)];
  }
  return total;
}

}  // namespace eflow
