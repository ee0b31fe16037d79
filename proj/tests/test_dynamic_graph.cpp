#include <random>
#include <unordered_set>

#include "doctest.h"
#include "dynmatch/dynamic_graph.hpp"

using namespace dynmatch;

TEST_CASE("first edge on an empty graph") {
  DynamicGraph g(4);
  g.insert_edge(Edge(0, 1));
  CHECK(g.num_edges() == 1);
  CHECK(g.degree(0) == 1);
  CHECK(g.degree(1) == 1);
  CHECK(g.has_edge(Edge(0, 1)));
  CHECK(g.has_edge(Edge(1, 0)));  // unordered pair
}

TEST_CASE("duplicate insertion is an error") {
  DynamicGraph g(4);
  g.insert_edge(Edge(0, 1));
  CHECK_THROWS_AS(g.insert_edge(Edge(0, 1)), DuplicateEdge);
  CHECK_THROWS_AS(g.insert_edge(Edge(1, 0)), DuplicateEdge);
}

TEST_CASE("self-loops are rejected") {
  DynamicGraph g(4);
  CHECK_THROWS_AS(g.insert_edge(Edge(2, 2)), SelfLoop);
}

TEST_CASE("triangle degrees") {
  DynamicGraph g(3);
  g.insert_edge(Edge(0, 1));
  g.insert_edge(Edge(1, 2));
  g.insert_edge(Edge(0, 2));
  CHECK(g.num_edges() == 3);
  for (VertexId v = 0; v < 3; ++v) CHECK(g.degree(v) == 2);

  g.delete_edge(Edge(0, 1));
  CHECK(g.num_edges() == 2);
  CHECK(g.degree(0) == 1);
  CHECK(g.degree(1) == 1);
  CHECK(g.degree(2) == 2);
}

TEST_CASE("deleting an absent edge is an error") {
  DynamicGraph g(4);
  CHECK_THROWS_AS(g.delete_edge(Edge(0, 1)), MissingEdge);
}

TEST_CASE("insert then delete with swapped endpoints empties the graph") {
  DynamicGraph g(4);
  g.insert_edge(Edge(0, 1));
  g.delete_edge(Edge(1, 0));
  CHECK(g.num_edges() == 0);
  CHECK(g.degree(0) == 0);
  CHECK(g.degree(1) == 0);
}

TEST_CASE("random event sequences agree with a hash-set reference") {
  std::mt19937_64 rng(7);
  const std::uint32_t n = 30;
  DynamicGraph g(n);
  std::unordered_set<std::uint64_t> ref;
  std::vector<std::uint32_t> deg(n, 0);

  for (int step = 0; step < 4000; ++step) {
    const auto u = static_cast<VertexId>(rng() % n);
    auto v = static_cast<VertexId>(rng() % (n - 1));
    if (v >= u) ++v;
    const Edge e(u, v);
    if (ref.count(edge_key(e))) {
      ref.erase(edge_key(e));
      g.delete_edge(e);
      --deg[e.u];
      --deg[e.v];
    } else {
      ref.insert(edge_key(e));
      g.insert_edge(e);
      ++deg[e.u];
      ++deg[e.v];
    }
    REQUIRE(g.num_edges() == ref.size());
  }

  // Edge-set equality plus adjacency symmetry via the unordered lookups.
  std::uint64_t degree_sum = 0;
  for (VertexId v = 0; v < n; ++v) {
    REQUIRE(g.degree(v) == deg[v]);
    degree_sum += g.degree(v);
  }
  REQUIRE(degree_sum == 2 * g.num_edges());
  for (Edge e : g.edges()) {
    REQUIRE(ref.count(edge_key(e)) == 1);
    REQUIRE(g.has_edge(Edge(e.v, e.u)));
  }
}

TEST_CASE("operations cost O(1) dictionary/list steps, independent of size") {
  auto max_op_delta = [](std::uint32_t n, int prefill) {
    DynamicGraph g(n);
    std::mt19937_64 rng(11);
    for (int i = 0; i < prefill;) {
      const auto u = static_cast<VertexId>(100 + rng() % (n - 100));
      auto v = static_cast<VertexId>(100 + rng() % (n - 101));
      if (v >= u) ++v;
      if (g.has_edge(Edge(u, v))) continue;
      g.insert_edge(Edge(u, v));
      ++i;
    }
    std::uint64_t worst = 0;
    for (int i = 0; i < 40; ++i) {
      const Edge e(static_cast<VertexId>(2 * i), static_cast<VertexId>(2 * i + 1));
      std::uint64_t before = g.op_count();
      g.insert_edge(e);
      worst = std::max(worst, g.op_count() - before);
      before = g.op_count();
      g.delete_edge(e);
      worst = std::max(worst, g.op_count() - before);
    }
    return worst;
  };

  const std::uint64_t small = max_op_delta(200, 0);
  const std::uint64_t large = max_op_delta(20000, 15000);
  CHECK(small <= 16);
  CHECK(large <= 16);
  CHECK(small == large);
}
