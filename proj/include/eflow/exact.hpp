#pragma once

#include "eflow/graph.hpp"

namespace eflow {

// Ground-truth combinatorial max-flow result, computed in integer arithmetic.
struct ExactResult {
  FlowVector flow;       // net signed flow per edge, |flow[e]| <= u_e
  long long value = 0;   // F*
  Cut mincut;            // residual-reachability cut; capacity == value
};

// Shortest-augmenting-path (Dinic) maximum flow. Each undirected edge is
// modeled as a pair of opposite residual arcs of capacity u_e sharing one net
// flow variable, so flow may run either way but never exceeds u_e in absolute
// value. If s and t are disconnected the value is 0 and the cut is the
// component of s.
ExactResult exact_maxflow(const Graph& g);

// Brute-force minimum s-t cut over all 2^(n-2) bipartitions. Only for n <= 20;
// cross-validates exact_maxflow.
long long enumerate_min_cut(const Graph& g);

}  // namespace eflow
