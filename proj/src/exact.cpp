#include "eflow/exact.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <vector>

namespace eflow {

namespace {

// Residual network over arcs; arc 2e runs tail->head of edge e, arc 2e+1 the
// reverse, and arc a's partner is a^1.
struct Dinic {
  int n;
  std::vector<std::int64_t> cap;   // per arc
  std::vector<std::int64_t> flow;  // per arc; flow[a] == -flow[a^1]
  std::vector<std::vector<int>> arcs_out;
  std::vector<int> arc_to;
  std::vector<int> level;
  std::vector<std::size_t> next_arc;

  explicit Dinic(const Graph& g) : n(g.vertex_count()) {
    int m = g.edge_count();
    cap.resize(static_cast<std::size_t>(2 * m));
    flow.assign(static_cast<std::size_t>(2 * m), 0);
    arc_to.resize(static_cast<std::size_t>(2 * m));
    arcs_out.assign(static_cast<std::size_t>(n), {});
    for (EdgeId e = 0; e < m; ++e) {
      const EdgeSpec& spec = g.edge(e);
      cap[static_cast<std::size_t>(2 * e)] = spec.capacity;
      cap[static_cast<std::size_t>(2 * e + 1)] = spec.capacity;
      arc_to[static_cast<std::size_t>(2 * e)] = spec.head;
      arc_to[static_cast<std::size_t>(2 * e + 1)] = spec.tail;
      arcs_out[static_cast<std::size_t>(spec.tail)].push_back(2 * e);
      arcs_out[static_cast<std::size_t>(spec.head)].push_back(2 * e + 1);
    }
  }

  std::int64_t residual(int a) const {
    return cap[static_cast<std::size_t>(a)] - flow[static_cast<std::size_t>(a)];
  }

  bool bfs(int s, int t) {
    level.assign(static_cast<std::size_t>(n), -1);
    std::queue<int> q;
    level[static_cast<std::size_t>(s)] = 0;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int a : arcs_out[static_cast<std::size_t>(v)]) {
        int w = arc_to[static_cast<std::size_t>(a)];
        if (level[static_cast<std::size_t>(w)] < 0 && residual(a) > 0) {
          level[static_cast<std::size_t>(w)] = level[static_cast<std::size_t>(v)] + 1;
          q.push(w);
        }
      }
    }
    return level[static_cast<std::size_t>(t)] >= 0;
  }

  std::int64_t dfs(int v, int t, std::int64_t limit) {
    if (v == t || limit == 0) return limit;
    for (std::size_t& i = next_arc[static_cast<std::size_t>(v)];
         i < arcs_out[static_cast<std::size_t>(v)].size(); ++i) {
      int a = arcs_out[static_cast<std::size_t>(v)][i];
      int w = arc_to[static_cast<std::size_t>(a)];
      if (level[static_cast<std::size_t>(w)] != level[static_cast<std::size_t>(v)] + 1 ||
          residual(a) <= 0)
        continue;
      std::int64_t pushed = dfs(w, t, std::min(limit, residual(a)));
      if (pushed > 0) {
        flow[static_cast<std::size_t>(a)] += pushed;
        flow[static_cast<std::size_t>(a ^ 1)] -= pushed;
        return pushed;
      }
    }
    return 0;
  }

  std::int64_t run(int s, int t) {
    std::int64_t total = 0;
    const std::int64_t inf = std::numeric_limits<std::int64_t>::max();
    while (bfs(s, t)) {
      next_arc.assign(static_cast<std::size_t>(n), 0);
      while (std::int64_t pushed = dfs(s, t, inf)) total += pushed;
    }
    return total;
  }
};

}  // namespace

ExactResult exact_maxflow(const Graph& g) {
  Dinic net(g);
  ExactResult out;
  out.value = net.run(g.source(), g.sink());

  out.flow.resize(static_cast<std::size_t>(g.edge_count()));
  for (EdgeId e = 0; e < g.edge_count(); ++e)
    out.flow[static_cast<std::size_t>(e)] =
        static_cast<double>(net.flow[static_cast<std::size_t>(2 * e)]);

  // The final bfs() leaves level >= 0 exactly on the residual-reachable set.
  net.bfs(g.source(), g.sink());
  out.mincut.side_s.assign(static_cast<std::size_t>(g.vertex_count()), 0);
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    out.mincut.side_s[static_cast<std::size_t>(v)] = net.level[static_cast<std::size_t>(v)] >= 0;
  out.mincut.capacity = cut_capacity(g, out.mincut);
  return out;
}

long long enumerate_min_cut(const Graph& g) {
  int n = g.vertex_count();
  if (n > 20) throw std::invalid_argument("enumerate_min_cut limited to n <= 20");

  std::vector<VertexId> free_vertices;
  for (VertexId v = 0; v < n; ++v)
    if (v != g.source() && v != g.sink()) free_vertices.push_back(v);

  long long best = std::numeric_limits<long long>::max();
  std::vector<std::uint8_t> side(static_cast<std::size_t>(n), 0);
  side[static_cast<std::size_t>(g.source())] = 1;
  const std::uint64_t subsets = std::uint64_t{1} << free_vertices.size();
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    for (std::size_t i = 0; i < free_vertices.size(); ++i)
      side[static_cast<std::size_t>(free_vertices[i])] = (mask >> i) & 1;
    long long capacity = 0;
    for (const EdgeSpec& e : g.edges()) {
      if (side[static_cast<std::size_t>(e.tail)] != side[static_cast<std::size_t>(e.head)])
        capacity += e.capacity;
    }
    best = std::min(best, capacity);
  }
  return best;
}

}  // namespace eflow
