#include <random>
#include <unordered_set>

#include "doctest.h"
#include "dynmatch/dynamic_graph.hpp"
#include "dynmatch/edcs.hpp"
#include "dynmatch/matching.hpp"
#include "dynmatch/oracle.hpp"

using namespace dynmatch;

namespace {

ChangeSet single(Edge e, bool added) {
  ChangeSet cs;
  cs.items.push_back({e, added});
  return cs;
}

}  // namespace

TEST_CASE("an empty changeset is a no-op") {
  MatchingLayer ml(4, 0.2);
  ml.apply(ChangeSet{});
  CHECK(ml.size() == 0);
  CHECK(ml.counter() == 0);
  CHECK_FALSE(ml.rebuild_active());
}

TEST_CASE("removing a matched edge frees both endpoints") {
  MatchingLayer ml(4, 0.2);
  ml.apply(single(Edge(0, 1), true));
  REQUIRE(ml.size() == 1);
  REQUIRE(ml.mate(0) == 1);

  ml.apply(single(Edge(0, 1), false));
  CHECK(ml.size() == 0);
  CHECK(ml.mate(0) == kNone);
  CHECK(ml.mate(1) == kNone);
  ml.self_check();
}

TEST_CASE("path a-b-c-d settles on the unique maximum") {
  MatchingLayer ml(4, 0.2);
  ml.apply(single(Edge(0, 1), true));
  ml.apply(single(Edge(1, 2), true));
  ml.apply(single(Edge(2, 3), true));
  CHECK(ml.size() == 2);
  CHECK(ml.mate(0) == 1);
  CHECK(ml.mate(1) == 0);
  CHECK(ml.mate(2) == 3);
  ml.self_check();
}

TEST_CASE("odd cycle C5 matches two pairs") {
  MatchingLayer ml(5, 0.2);
  for (VertexId i = 0; i < 5; ++i) {
    ml.apply(single(Edge(i, (i + 1) % 5), true));
  }
  CHECK(ml.size() == 2);
  ml.self_check();
}

TEST_CASE("random streams: validity, drift guarantee, rebuild window") {
  const std::uint32_t n = 14;
  const double eps = 0.2;
  MatchingLayer ml(n, eps);
  std::mt19937_64 rng(606);
  std::unordered_set<std::uint64_t> live;

  for (int step = 0; step < 3000; ++step) {
    const auto u = static_cast<VertexId>(rng() % n);
    auto v = static_cast<VertexId>(rng() % (n - 1));
    if (v >= u) ++v;
    const Edge e(u, v);
    const bool add = !live.count(edge_key(e));
    if (add) {
      live.insert(edge_key(e));
    } else {
      live.erase(edge_key(e));
    }
    const std::uint64_t ops_before = ml.op_count();
    ml.apply(single(e, add));

    ml.self_check();
    // Served size never lags mu(H) by more than the (1+eps) budget.
    const std::uint32_t mu =
        oracle::max_matching_blossom_size(n, ml.h_mirror());
    REQUIRE(ml.size() <= mu);
    REQUIRE(static_cast<double>(mu) <= (1.0 + eps) * ml.size() + 1e-9);
    // A live rebuild never outlasts its window.
    if (ml.rebuild_active()) {
      REQUIRE(ml.counter() < ml.threshold());
    }
    // Slice work stays within the quota plus the forced-completion slack.
    const std::uint64_t ops = ml.op_count() - ops_before;
    REQUIRE(ops <= 2 * ml.last_quota() + 8ull * (ml.h_size() + n) + 64);
  }
}

TEST_CASE("drift stays within budget when fed by a live EDCS") {
  const std::uint32_t n = 40;
  DynamicGraph g(n);
  EdcsEngine edcs(n, EdcsParams::make(8, 0.25), EdcsMode::Eager, n - 1);
  const double eps = 0.5 * 2.0 / 7.0;  // the pipeline's global rescale
  MatchingLayer ml(n, eps);
  std::mt19937_64 rng(2024);

  for (int step = 0; step < 4000; ++step) {
    const auto u = static_cast<VertexId>(rng() % n);
    auto v = static_cast<VertexId>(rng() % (n - 1));
    if (v >= u) ++v;
    const Edge e(u, v);
    ChangeSet cs;
    if (g.has_edge(e)) {
      cs = edcs.on_delete(g.delete_edge(e), e.u, e.v);
    } else {
      cs = edcs.on_insert(g.insert_edge(e), e.u, e.v);
    }
    ml.apply(cs);
    if (step % 10 == 0) {
      ml.self_check();
      const std::uint32_t mu =
          oracle::max_matching_blossom_size(n, ml.h_mirror());
      REQUIRE(ml.size() <= mu);
      REQUIRE(static_cast<double>(mu) <= (1.0 + eps) * ml.size() + 1e-9);
    }
  }
  // The mirror tracked H exactly.
  CHECK(ml.h_size() == edcs.h_size());
}
