#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "eflow/graph.hpp"

namespace eflow {

// Connected random multigraph: a random spanning tree backbone plus
// extra_edges uniform random pairs (parallel edges allowed, self-loops
// skipped), integer capacities uniform in [1, max_cap]. s = 0, t = n - 1.
Graph gen_random_connected(int n, int extra_edges, int max_cap, std::uint64_t seed);

// The width lower-bound family: k disjoint s-t paths of length k plus one
// direct s-t edge, unit capacities. Max flow is k + 1; the uniform-resistance
// electrical flow of that value puts (k+1)/2 on the direct edge.
Graph gen_paths_with_shortcut(int k);

// Parses "er:n=<n>,m=<extra>,maxcap=<c>,seed=<s>" or "shortcut:k=<k>".
// Returns nullopt and fills error on malformed input.
std::optional<Graph> gen_from_spec(std::string_view spec, std::string* error);

}  // namespace eflow
