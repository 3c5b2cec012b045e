#include "eflow/generator.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <random>
#include <vector>

namespace eflow {

Graph gen_random_connected(int n, int extra_edges, int max_cap, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("need at least two vertices");
  if (max_cap < 1) throw std::invalid_argument("max_cap must be at least 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> cap(1, max_cap);

  std::vector<VertexId> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<EdgeSpec> edges;
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> pick(0, i - 1);
    edges.push_back({order[static_cast<std::size_t>(pick(rng))],
                     order[static_cast<std::size_t>(i)], cap(rng)});
  }
  std::uniform_int_distribution<int> vertex(0, n - 1);
  for (int i = 0; i < extra_edges; ++i) {
    int u = vertex(rng), v = vertex(rng);
    if (u == v) continue;
    edges.push_back({u, v, cap(rng)});
  }
  return Graph(n, std::move(edges), 0, n - 1);
}

Graph gen_paths_with_shortcut(int k) {
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  // Vertices: s = 0, t = 1, then k paths of k - 1 interior vertices each.
  int n = 2 + k * (k - 1);
  std::vector<EdgeSpec> edges;
  edges.push_back({0, 1, 1});  // the shortcut
  int next = 2;
  for (int p = 0; p < k; ++p) {
    int prev = 0;
    for (int i = 0; i < k - 1; ++i) {
      edges.push_back({prev, next, 1});
      prev = next++;
    }
    edges.push_back({prev, 1, 1});
  }
  return Graph(n, std::move(edges), 0, 1);
}

namespace {

bool parse_kv(std::string_view params, std::map<std::string, std::int64_t>& out,
              std::string* error) {
  std::size_t pos = 0;
  while (pos < params.size()) {
    std::size_t end = params.find(',', pos);
    if (end == std::string_view::npos) end = params.size();
    std::string_view item = params.substr(pos, end - pos);
    pos = end + 1;
    std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) {
      if (error) *error = "expected key=value, got '" + std::string(item) + "'";
      return false;
    }
    std::string_view value = item.substr(eq + 1);
    std::int64_t parsed = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
      if (error) *error = "value of '" + std::string(item.substr(0, eq)) + "' is not an integer";
      return false;
    }
    out[std::string(item.substr(0, eq))] = parsed;
  }
  return true;
}

}  // namespace

std::optional<Graph> gen_from_spec(std::string_view spec, std::string* error) {
  std::size_t colon = spec.find(':');
  std::string_view family = spec.substr(0, colon);
  std::string_view params = colon == std::string_view::npos ? std::string_view{}
                                                            : spec.substr(colon + 1);
  std::map<std::string, std::int64_t> kv;
  if (!parse_kv(params, kv, error)) return std::nullopt;

  try {
    if (family == "er") {
      int n = static_cast<int>(kv.count("n") ? kv["n"] : 10);
      int extra = static_cast<int>(kv.count("m") ? kv["m"] : n);
      int max_cap = static_cast<int>(kv.count("maxcap") ? kv["maxcap"] : 64);
      std::uint64_t seed = static_cast<std::uint64_t>(kv.count("seed") ? kv["seed"] : 1);
      return gen_random_connected(n, extra, max_cap, seed);
    }
    if (family == "shortcut") {
      int k = static_cast<int>(kv.count("k") ? kv["k"] : 4);
      return gen_paths_with_shortcut(k);
    }
  } catch (const std::invalid_argument& err) {
    if (error) *error = err.what();
    return std::nullopt;
  }
  if (error) *error = "unknown generator family '" + std::string(family) + "'";
  return std::nullopt;
}

}  // namespace eflow
