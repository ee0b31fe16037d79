#include "dynmatch/oracle.hpp"

#include <algorithm>
#include <unordered_set>

namespace dynmatch::oracle {

namespace {

// Remaps endpoints of <=26 edges into a dense range so vertex sets fit a
// 64-bit mask.
struct BruteInstance {
  std::vector<std::pair<std::uint8_t, std::uint8_t>> edges;
};

BruteInstance remap(const std::vector<Edge>& edges) {
  BruteInstance inst;
  std::vector<VertexId> ids;
  for (Edge e : edges) {
    ids.push_back(e.u);
    ids.push_back(e.v);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  auto index = [&](VertexId v) {
    return static_cast<std::uint8_t>(
        std::lower_bound(ids.begin(), ids.end(), v) - ids.begin());
  };
  for (Edge e : edges) {
    inst.edges.emplace_back(index(e.u), index(e.v));
  }
  return inst;
}

struct BruteSearch {
  const BruteInstance& inst;
  std::uint32_t best = 0;

  void rec(std::size_t idx, std::uint32_t matched, std::uint64_t used) {
    const std::size_t m = inst.edges.size();
    if (matched + (m - idx) <= best) return;
    if (idx == m) {
      best = std::max(best, matched);
      return;
    }
    const auto [a, b] = inst.edges[idx];
    const std::uint64_t mask = (1ull << a) | (1ull << b);
    if ((used & mask) == 0) {
      rec(idx + 1, matched + 1, used | mask);
    }
    rec(idx + 1, matched, used);
  }
};

}  // namespace

std::uint32_t max_matching_bruteforce(std::uint32_t, const std::vector<Edge>& edges) {
  if (edges.size() > kBruteForceEdgeCap) {
    throw TooLarge("brute-force cap is " + std::to_string(kBruteForceEdgeCap) +
                   " edges, got " + std::to_string(edges.size()));
  }
  BruteInstance inst = remap(edges);
  BruteSearch search{inst};
  // Greedy maximal matching as the initial incumbent; tightens pruning.
  std::uint64_t used = 0;
  for (const auto& [a, b] : inst.edges) {
    const std::uint64_t mask = (1ull << a) | (1ull << b);
    if ((used & mask) == 0) {
      used |= mask;
      ++search.best;
    }
  }
  search.rec(0, 0, 0);
  return search.best;
}

BlossomMatcher::BlossomMatcher(std::uint32_t n, const std::vector<Edge>& edges)
    : n_(n),
      adj_head_(n, kNone),
      mate_(n, kNone),
      parent_(n, kNone),
      base_(n, 0),
      in_queue_(n, 0),
      in_blossom_(n, 0),
      on_path_(n, 0) {
  adj_next_.reserve(edges.size() * 2);
  adj_to_.reserve(edges.size() * 2);
  for (Edge e : edges) {
    adj_next_.push_back(adj_head_[e.u]);
    adj_to_.push_back(e.v);
    adj_head_[e.u] = static_cast<std::uint32_t>(adj_to_.size() - 1);
    adj_next_.push_back(adj_head_[e.v]);
    adj_to_.push_back(e.u);
    adj_head_[e.v] = static_cast<std::uint32_t>(adj_to_.size() - 1);
  }
}

void BlossomMatcher::warm_start(const std::vector<Edge>& matched) {
  for (Edge e : matched) {
    mate_[e.u] = e.v;
    mate_[e.v] = e.u;
  }
  size_ = static_cast<std::uint32_t>(matched.size());
}

std::uint64_t BlossomMatcher::work_upper_bound() const {
  std::uint64_t roots = 0;
  for (VertexId v = next_root_; v < n_; ++v) {
    if (mate_[v] == kNone && adj_head_[v] != kNone) ++roots;
  }
  const std::uint64_t phase = 2 * adj_to_.size() + 4ull * n_ + 64;
  return (roots + 1) * phase;
}

VertexId BlossomMatcher::find_lca(VertexId a, VertexId b) {
  std::fill(on_path_.begin(), on_path_.end(), 0);
  VertexId x = a;
  while (true) {
    x = base_[x];
    on_path_[x] = 1;
    if (mate_[x] == kNone) break;
    x = parent_[mate_[x]];
  }
  VertexId y = b;
  while (!on_path_[base_[y]]) y = parent_[mate_[y]];
  return base_[y];
}

void BlossomMatcher::mark_blossom_path(VertexId v, VertexId b, VertexId child) {
  while (base_[v] != b) {
    in_blossom_[base_[v]] = 1;
    in_blossom_[base_[mate_[v]]] = 1;
    parent_[v] = child;
    child = mate_[v];
    v = parent_[mate_[v]];
  }
}

bool BlossomMatcher::augment_from(VertexId root) {
  std::fill(parent_.begin(), parent_.end(), kNone);
  std::fill(in_queue_.begin(), in_queue_.end(), 0);
  for (VertexId i = 0; i < n_; ++i) base_[i] = i;
  work_ += 3ull * n_;

  queue_.clear();
  queue_.push_back(root);
  in_queue_[root] = 1;
  std::size_t qi = 0;
  while (qi < queue_.size()) {
    const VertexId v = queue_[qi++];
    for (std::uint32_t it = adj_head_[v]; it != kNone; it = adj_next_[it]) {
      ++work_;
      const VertexId to = adj_to_[it];
      if (base_[v] == base_[to] || mate_[v] == to) continue;
      if (to == root || (mate_[to] != kNone && parent_[mate_[to]] != kNone)) {
        // odd cycle: contract the blossom
        const VertexId cur_base = find_lca(v, to);
        std::fill(in_blossom_.begin(), in_blossom_.end(), 0);
        mark_blossom_path(v, cur_base, to);
        mark_blossom_path(to, cur_base, v);
        for (VertexId i = 0; i < n_; ++i) {
          if (in_blossom_[base_[i]]) {
            base_[i] = cur_base;
            if (!in_queue_[i]) {
              in_queue_[i] = 1;
              queue_.push_back(i);
            }
          }
        }
        work_ += 2ull * n_;
      } else if (parent_[to] == kNone) {
        parent_[to] = v;
        if (mate_[to] == kNone) {
          // augment along parent links
          VertexId w = to;
          while (w != kNone) {
            const VertexId pw = parent_[w];
            const VertexId next = mate_[pw];
            mate_[w] = pw;
            mate_[pw] = w;
            w = next;
          }
          ++size_;
          return true;
        }
        in_queue_[mate_[to]] = 1;
        queue_.push_back(mate_[to]);
      }
    }
  }
  return false;
}

bool BlossomMatcher::run(std::uint64_t budget) {
  if (done_) return true;
  const std::uint64_t start = work_;
  while (next_root_ < n_) {
    if (work_ - start >= budget) return false;
    const VertexId r = next_root_++;
    if (mate_[r] != kNone || adj_head_[r] == kNone) continue;
    augment_from(r);
  }
  done_ = true;
  return true;
}

std::vector<Edge> BlossomMatcher::matched_edges() const {
  std::vector<Edge> out;
  out.reserve(size_);
  for (VertexId v = 0; v < n_; ++v) {
    if (mate_[v] != kNone && v < mate_[v]) out.emplace_back(v, mate_[v]);
  }
  return out;
}

std::uint32_t max_matching_blossom_size(std::uint32_t n, const std::vector<Edge>& edges) {
  BlossomMatcher m(n, edges);
  m.run(~0ull);
  return m.size();
}

EdcsReport verify_edcs(std::uint32_t n, const std::vector<Edge>& g,
                       const std::vector<Edge>& h, double bound_hi, double bound_lo) {
  std::vector<std::uint32_t> dh(n, 0);
  std::unordered_set<std::uint64_t> in_h;
  in_h.reserve(h.size() * 2);
  for (Edge e : h) {
    dh[e.u] += 1;
    dh[e.v] += 1;
    in_h.insert(edge_key(e));
  }
  std::unordered_set<std::uint64_t> in_g;
  in_g.reserve(g.size() * 2);
  for (Edge e : g) in_g.insert(edge_key(e));
  for (Edge e : h) {
    if (!in_g.count(edge_key(e))) throw InvalidParams("h is not a subgraph of g");
  }

  EdcsReport report;
  for (Edge e : g) {
    const std::uint32_t w = dh[e.u] + dh[e.v];
    if (in_h.count(edge_key(e))) {
      report.max_weight_in_h = std::max(report.max_weight_in_h, w);
      if (static_cast<double>(w) > bound_hi) report.violations_p1.push_back(e);
    } else {
      report.min_weight_outside = std::min(report.min_weight_outside, w);
      if (static_cast<double>(w) < bound_lo) report.violations_p2.push_back(e);
    }
  }
  return report;
}

SparsifierRatio verify_sparsifier_ratio(std::uint32_t n, const std::vector<Edge>& g,
                                        const std::vector<Edge>& g_prime, double eps) {
  if (n > 100000) throw TooLarge("sparsifier ratio oracle capped at n = 100000");
  SparsifierRatio r;
  r.mu_g = max_matching_blossom_size(n, g);
  r.mu_g_prime = max_matching_blossom_size(n, g_prime);
  r.pass = static_cast<double>(r.mu_g) <= (1.0 + eps) * static_cast<double>(r.mu_g_prime);
  return r;
}

}  // namespace dynmatch::oracle
