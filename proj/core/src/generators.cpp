#include "dynmatch/generators.hpp"

#include <deque>
#include <random>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace dynmatch {

GeneratorKind parse_generator_kind(const std::string& name) {
  if (name == "uniform") return GeneratorKind::Uniform;
  if (name == "sliding-window") return GeneratorKind::SlidingWindow;
  if (name == "bounded-outdegree") return GeneratorKind::BoundedOutdegree;
  if (name == "star-adversary") return GeneratorKind::StarAdversary;
  throw InvalidParams("unknown generator kind: " + name);
}

std::string generator_kind_name(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::Uniform: return "uniform";
    case GeneratorKind::SlidingWindow: return "sliding-window";
    case GeneratorKind::BoundedOutdegree: return "bounded-outdegree";
    case GeneratorKind::StarAdversary: return "star-adversary";
  }
  return "?";
}

namespace {

// Modulo draw keeps streams byte-identical across standard libraries; the
// bias is irrelevant here.
struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  std::uint64_t next(std::uint64_t bound) { return eng() % bound; }
};

Edge random_pair(Rng& rng, std::uint32_t n) {
  const auto u = static_cast<VertexId>(rng.next(n));
  auto v = static_cast<VertexId>(rng.next(n - 1));
  if (v >= u) ++v;
  return Edge(u, v);
}

void gen_uniform(const GeneratorConfig& c, UpdateStream& out) {
  Rng rng(c.seed);
  std::unordered_set<std::uint64_t> live;
  for (std::uint64_t step = 0; step < c.steps; ++step) {
    const Edge e = random_pair(rng, c.n);
    if (live.count(edge_key(e))) {
      live.erase(edge_key(e));
      out.events.push_back({UpdateKind::Delete, e});
    } else {
      live.insert(edge_key(e));
      out.events.push_back({UpdateKind::Insert, e});
    }
  }
}

void gen_sliding_window(const GeneratorConfig& c, UpdateStream& out) {
  Rng rng(c.seed);
  const std::uint32_t window = c.window ? c.window : c.n;
  const std::uint64_t pairs = static_cast<std::uint64_t>(c.n) * (c.n - 1) / 2;
  if (window >= pairs) throw InvalidParams("sliding window must be below the pair count");
  std::unordered_set<std::uint64_t> live;
  std::deque<Edge> order;
  for (std::uint64_t step = 0; step < c.steps; ++step) {
    if (order.size() >= window) {
      const Edge oldest = order.front();
      order.pop_front();
      live.erase(edge_key(oldest));
      out.events.push_back({UpdateKind::Delete, oldest});
      continue;
    }
    Edge e = random_pair(rng, c.n);
    while (live.count(edge_key(e))) e = random_pair(rng, c.n);
    live.insert(edge_key(e));
    order.push_back(e);
    out.events.push_back({UpdateKind::Insert, e});
  }
}

void gen_bounded_outdegree(const GeneratorConfig& c, UpdateStream& out) {
  if (c.outdeg < 1) throw InvalidParams("outdeg must be >= 1");
  Rng rng(c.seed);
  std::vector<std::uint32_t> outdeg(c.n, 0);
  std::unordered_map<std::uint64_t, VertexId> oriented_from;
  std::vector<Edge> live_vec;
  std::unordered_map<std::uint64_t, std::uint32_t> live_pos;

  auto do_delete = [&]() {
    const std::size_t idx = rng.next(live_vec.size());
    const Edge e = live_vec[idx];
    live_vec[idx] = live_vec.back();
    live_pos[edge_key(live_vec[idx])] = static_cast<std::uint32_t>(idx);
    live_vec.pop_back();
    live_pos.erase(edge_key(e));
    outdeg[oriented_from[edge_key(e)]] -= 1;
    oriented_from.erase(edge_key(e));
    out.events.push_back({UpdateKind::Delete, e});
  };

  auto try_insert = [&]() -> bool {
    for (int attempt = 0; attempt < 200; ++attempt) {
      const auto u = static_cast<VertexId>(rng.next(c.n));
      if (outdeg[u] >= c.outdeg) continue;
      auto v = static_cast<VertexId>(rng.next(c.n - 1));
      if (v >= u) ++v;
      const Edge e(u, v);
      if (live_pos.count(edge_key(e))) continue;
      oriented_from[edge_key(e)] = u;
      outdeg[u] += 1;
      live_pos[edge_key(e)] = static_cast<std::uint32_t>(live_vec.size());
      live_vec.push_back(e);
      out.events.push_back({UpdateKind::Insert, e});
      return true;
    }
    return false;
  };

  for (std::uint64_t step = 0; step < c.steps; ++step) {
    const bool want_insert = rng.next(100) < 60 || live_vec.empty();
    if (want_insert) {
      if (!try_insert()) {
        if (live_vec.empty()) throw InvalidParams("bounded-outdegree generator is stuck");
        do_delete();
      }
    } else {
      do_delete();
    }
  }
}

void gen_star_adversary(const GeneratorConfig& c, UpdateStream& out) {
  const std::uint32_t window = c.window ? std::min(c.window, c.n - 1) : (c.n - 1) / 2;
  if (window < 1) throw InvalidParams("star window must be >= 1");
  std::vector<char> live(c.n, 0);
  std::deque<VertexId> order;
  VertexId next_leaf = 1;
  auto advance = [&]() {
    while (live[next_leaf]) {
      next_leaf = (next_leaf == c.n - 1) ? 1 : next_leaf + 1;
    }
  };
  for (std::uint64_t step = 0; step < c.steps; ++step) {
    if (order.size() >= window) {
      const VertexId leaf = order.front();
      order.pop_front();
      live[leaf] = 0;
      out.events.push_back({UpdateKind::Delete, Edge(0, leaf)});
    } else {
      advance();
      live[next_leaf] = 1;
      order.push_back(next_leaf);
      out.events.push_back({UpdateKind::Insert, Edge(0, next_leaf)});
      next_leaf = (next_leaf == c.n - 1) ? 1 : next_leaf + 1;
    }
  }
}

}  // namespace

UpdateStream generate_stream(const GeneratorConfig& c) {
  if (c.n < 2) throw InvalidParams("generator needs n >= 2");
  UpdateStream out;
  out.vertex_count = c.n;
  out.had_header = true;
  out.events.reserve(c.steps);
  switch (c.kind) {
    case GeneratorKind::Uniform: gen_uniform(c, out); break;
    case GeneratorKind::SlidingWindow: gen_sliding_window(c, out); break;
    case GeneratorKind::BoundedOutdegree: gen_bounded_outdegree(c, out); break;
    case GeneratorKind::StarAdversary: gen_star_adversary(c, out); break;
  }
  return out;
}

}  // namespace dynmatch
