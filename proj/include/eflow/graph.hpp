#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace eflow {

using VertexId = int;
using EdgeId = int;

// Thrown when the source and sink do not share a connected component of the
// live edge set.
struct DisconnectedError : std::runtime_error {
  DisconnectedError() : std::runtime_error("source and sink are disconnected") {}
  explicit DisconnectedError(const std::string& what) : std::runtime_error(what) {}
};

struct EdgeSpec {
  VertexId tail = 0;
  VertexId head = 0;
  std::int64_t capacity = 1;
};

// Undirected capacitated graph with a fixed arbitrary orientation per edge
// and a distinguished source/sink pair. Orientations only fix the sign
// convention for flow values; capacities bound |f(e)| in either direction.
//
// Vertices are dense ids 0..n-1. Parallel edges are kept as distinct edges
// (they act as separate resistors); self-loops are rejected. Immutable after
// construction, so concurrent reads are safe.
class Graph {
 public:
  Graph(int n, std::vector<EdgeSpec> edges, VertexId s, VertexId t);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const EdgeSpec& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }
  std::span<const EdgeSpec> edges() const { return edges_; }
  VertexId source() const { return s_; }
  VertexId sink() const { return t_; }

  // Ratio of the largest to the smallest capacity (U).
  double capacity_ratio() const { return capacity_ratio_; }

  // adjacency()[v] lists (neighbor, edge id) pairs; every edge appears under
  // both endpoints.
  const std::vector<std::vector<std::pair<VertexId, EdgeId>>>& adjacency() const {
    return adjacency_;
  }

 private:
  int n_ = 0;
  std::vector<EdgeSpec> edges_;
  VertexId s_ = 0;
  VertexId t_ = 0;
  double capacity_ratio_ = 1.0;
  std::vector<std::vector<std::pair<VertexId, EdgeId>>> adjacency_;
};

// Edge-indexed signed flow; positive values run tail -> head.
using FlowVector = std::vector<double>;
// Vertex-indexed potentials, defined up to an additive constant.
using PotentialVector = std::vector<double>;
// Vertex-indexed net outflow (the entries of B f); sums to zero for any flow.
using DivergenceVector = std::vector<double>;

// s-t cut: side_s marks the vertices on the source side.
struct Cut {
  std::vector<std::uint8_t> side_s;
  double capacity = 0.0;
};

// Net outflow per vertex: entry v is sum of f over edges leaving v minus sum
// over edges entering v. A value-F s-t flow has divergence F at s, -F at t,
// and 0 elsewhere.
DivergenceVector divergence(const Graph& g, const FlowVector& f);

// Net flow out of the source. Throws std::runtime_error naming the worst
// offender if conservation fails at an interior vertex (relative tolerance
// 1e-9 of the flow scale).
double flow_value(const Graph& g, const FlowVector& f);

struct CongestionProfile {
  std::vector<double> per_edge;  // |f(e)| / u_e
  double max = 0.0;
  EdgeId argmax = -1;
};
CongestionProfile congestion(const Graph& g, const FlowVector& f);

// Sum of capacities of edges with exactly one endpoint on the source side.
// Throws std::invalid_argument if the partition does not separate s from t.
double cut_capacity(const Graph& g, const Cut& c);

// Signed flow crossing the cut from the s side to the t side; equals the
// flow value for any conserving flow.
double cut_crossing_flow(const Graph& g, const Cut& c, const FlowVector& f);

}  // namespace eflow
