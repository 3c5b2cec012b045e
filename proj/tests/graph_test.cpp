#include "eflow/graph.hpp"

#include <random>

#include "doctest.h"
#include "eflow/exact.hpp"
#include "eflow/generator.hpp"
#include "eflow/laplacian.hpp"
#include "test_support.hpp"

using namespace eflow;

TEST_CASE("graph construction validates its invariants") {
  CHECK_THROWS_AS(Graph(2, {{0, 1, 1}}, 0, 0), std::invalid_argument);  // s == t
  CHECK_THROWS_AS(Graph(2, {{0, 0, 1}}, 0, 1), std::invalid_argument);  // self-loop
  CHECK_THROWS_AS(Graph(2, {{0, 1, 0}}, 0, 1), std::invalid_argument);  // zero capacity
  CHECK_THROWS_AS(Graph(2, {{0, 2, 1}}, 0, 1), std::invalid_argument);  // bad endpoint
  Graph g(3, {{0, 1, 2}, {1, 2, 8}, {0, 1, 4}}, 0, 2);  // parallel edges stay distinct
  CHECK(g.edge_count() == 3);
  CHECK(g.capacity_ratio() == doctest::Approx(4.0));
}

TEST_CASE("divergence signs and telescoping") {
  Graph g = test::single_edge(5);
  DivergenceVector d = divergence(g, {3.0});
  CHECK(d[0] == doctest::Approx(3.0));
  CHECK(d[1] == doctest::Approx(-3.0));

  Graph tri = test::triangle();
  CHECK(divergence(tri, {0.0, 0.0, 0.0}) == DivergenceVector{0.0, 0.0, 0.0});

  // Exact electrical unit flow on the triangle: 2/3 direct, 1/3 per path edge.
  auto solved = solve_exact(assemble(tri, ResistanceVector::uniform(3, 1.0)), 1.0);
  DivergenceVector dt = divergence(tri, solved.flow);
  CHECK(dt[0] == doctest::Approx(1.0));
  CHECK(dt[1] == doctest::Approx(0.0));
  CHECK(dt[2] == doctest::Approx(-1.0));
}

TEST_CASE("divergence entries always sum to zero") {
  std::mt19937_64 rng(7);
  for (const Graph& g : test::random_corpus(20, 4, 16, 20, 64, 11)) {
    FlowVector f(static_cast<std::size_t>(g.edge_count()));
    std::uniform_real_distribution<double> value(-10.0, 10.0);
    for (double& v : f) v = value(rng);
    DivergenceVector d = divergence(g, f);
    double sum = 0.0, scale = 0.0;
    for (double v : d) {
      sum += v;
      scale += std::abs(v);
    }
    CHECK(std::abs(sum) <= 1e-12 * (scale + 1.0));
  }
}

TEST_CASE("flow_value reads the net outflow of s and rejects non-conservation") {
  CHECK(flow_value(test::single_edge(5), {5.0}) == doctest::Approx(5.0));
  CHECK(flow_value(test::single_edge(5), {0.0}) == doctest::Approx(0.0));

  // k paths of length k plus a shortcut; electrical flow of value k+1.
  Graph bad = gen_paths_with_shortcut(3);
  auto solved = solve_exact(assemble(bad, ResistanceVector::uniform(bad.edge_count(), 1.0)),
                            4.0);
  CHECK(flow_value(bad, solved.flow) == doctest::Approx(4.0));

  Graph path = test::path_graph({2, 2});
  CHECK_THROWS_WITH_AS(static_cast<void>(flow_value(path, {1.0, 0.5})),
                       doctest::Contains("vertex 1"), std::runtime_error);
}

TEST_CASE("flow_value equals minus the divergence at t for conserving flows") {
  std::mt19937_64 rng(3);
  for (const Graph& g : test::random_corpus(10, 4, 12, 14, 32, 5)) {
    FlowVector f = test::random_conserving_flow(g, 3.5, rng);
    DivergenceVector d = divergence(g, f);
    CHECK(flow_value(g, f) ==
          doctest::Approx(-d[static_cast<std::size_t>(g.sink())]).epsilon(1e-9));
  }
}

TEST_CASE("congestion profile") {
  Graph g = test::single_edge(2);
  CongestionProfile c = congestion(g, {3.0});
  CHECK(c.per_edge[0] == doctest::Approx(1.5));
  CHECK(c.max == doctest::Approx(1.5));

  // Any feasible flow has max congestion at most 1.
  Graph diamond = test::diamond();
  ExactResult exact = exact_maxflow(diamond);
  CHECK(congestion(diamond, exact.flow).max <= 1.0 + 1e-9);

  Graph bad = gen_paths_with_shortcut(3);
  auto solved = solve_exact(assemble(bad, ResistanceVector::uniform(bad.edge_count(), 1.0)),
                            4.0);
  CHECK(congestion(bad, solved.flow).max == doctest::Approx(2.0));  // (k+1)/2 on the shortcut
}

TEST_CASE("cut capacity") {
  Graph one = test::single_edge(7);
  CHECK(cut_capacity(one, Cut{{1, 0}, 0.0}) == doctest::Approx(7.0));

  Graph tri = test::triangle();
  CHECK(cut_capacity(tri, Cut{{1, 0, 0}, 0.0}) == doctest::Approx(2.0));

  // Hand enumeration of crossing edges for S = {s, a}: s-b and a-t cross.
  Graph diamond = test::diamond();
  CHECK(cut_capacity(diamond, Cut{{1, 1, 0, 0}, 0.0}) == doctest::Approx(4.0));

  CHECK_THROWS_AS(cut_capacity(diamond, Cut{{0, 1, 0, 0}, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(cut_capacity(diamond, Cut{{1, 1, 0, 1}, 0.0}), std::invalid_argument);
}

TEST_CASE("conserving flows cross every cut with their full value") {
  std::mt19937_64 rng(17);
  for (const Graph& g : test::random_corpus(10, 5, 10, 12, 16, 23)) {
    FlowVector f = test::random_conserving_flow(g, 2.0, rng);
    for (int trial = 0; trial < 5; ++trial) {
      Cut cut;
      cut.side_s.assign(static_cast<std::size_t>(g.vertex_count()), 0);
      for (VertexId v = 0; v < g.vertex_count(); ++v)
        cut.side_s[static_cast<std::size_t>(v)] = rng() & 1;
      cut.side_s[static_cast<std::size_t>(g.source())] = 1;
      cut.side_s[static_cast<std::size_t>(g.sink())] = 0;
      CHECK(cut_crossing_flow(g, cut, f) == doctest::Approx(2.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("every sampled cut upper-bounds the max flow") {
  std::mt19937_64 rng(29);
  for (const Graph& g : test::random_corpus(10, 4, 10, 10, 32, 31)) {
    long long f_star = exact_maxflow(g).value;
    for (int trial = 0; trial < 10; ++trial) {
      Cut cut;
      cut.side_s.assign(static_cast<std::size_t>(g.vertex_count()), 0);
      for (VertexId v = 0; v < g.vertex_count(); ++v)
        cut.side_s[static_cast<std::size_t>(v)] = rng() & 1;
      cut.side_s[static_cast<std::size_t>(g.source())] = 1;
      cut.side_s[static_cast<std::size_t>(g.sink())] = 0;
      CHECK(cut_capacity(g, cut) >= static_cast<double>(f_star));
    }
  }
}
