#include "dynmatch/matching.hpp"

#include <algorithm>
#include <cmath>

namespace dynmatch {

MatchingLayer::MatchingLayer(std::uint32_t n, double eps)
    : n_(n), eps_(eps), mate_(n, kNone) {
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidParams("matching eps must lie in (0, 1)");
}

void MatchingLayer::h_add(Edge e) {
  h_index_.emplace(edge_key(e), static_cast<std::uint32_t>(h_vec_.size()));
  h_vec_.push_back(e);
  ++ops_;
}

void MatchingLayer::h_remove(Edge e) {
  auto it = h_index_.find(edge_key(e));
  if (it == h_index_.end()) throw Error("matching layer: removal of unknown H-edge");
  const std::uint32_t pos = it->second;
  h_index_.erase(it);
  const Edge back = h_vec_.back();
  h_vec_[pos] = back;
  h_vec_.pop_back();
  if (pos < h_vec_.size()) h_index_[edge_key(back)] = pos;
  ++ops_;
}

void MatchingLayer::unmatch_edge(Edge e) {
  if (mate_[e.u] == e.v) {
    mate_[e.u] = kNone;
    mate_[e.v] = kNone;
    size_ -= 1;
    ++ops_;
  }
}

void MatchingLayer::start_rebuild() {
  // Compact the snapshot onto its non-isolated vertices so kernel phases
  // cost O(m_snapshot) rather than O(n).
  rebuild_.to_dense.assign(n_, kNone);
  rebuild_.to_sparse.clear();
  auto dense = [&](VertexId v) {
    if (rebuild_.to_dense[v] == kNone) {
      rebuild_.to_dense[v] = static_cast<VertexId>(rebuild_.to_sparse.size());
      rebuild_.to_sparse.push_back(v);
    }
    return rebuild_.to_dense[v];
  };
  std::vector<Edge> snapshot;
  snapshot.reserve(h_vec_.size());
  std::uint32_t max_deg = 0;
  {
    std::vector<std::uint32_t> deg;
    for (Edge e : h_vec_) {
      const VertexId a = dense(e.u);
      const VertexId b = dense(e.v);
      deg.resize(rebuild_.to_sparse.size(), 0);
      max_deg = std::max({max_deg, ++deg[a], ++deg[b]});
      snapshot.emplace_back(a, b);
    }
  }
  std::vector<Edge> warm;
  warm.reserve(size_);
  for (Edge e : matched_edges()) {
    warm.emplace_back(rebuild_.to_dense[e.u], rebuild_.to_dense[e.v]);
  }

  rebuild_.active = true;
  rebuild_.kernel = std::make_unique<oracle::BlossomMatcher>(
      static_cast<std::uint32_t>(rebuild_.to_sparse.size()), snapshot);
  rebuild_.kernel->warm_start(warm);
  rebuild_.window = threshold_;
  const std::uint64_t upper = rebuild_.kernel->work_upper_bound();
  const std::uint64_t floor_quota =
      static_cast<std::uint64_t>(std::ceil(16.0 * (max_deg + 1) / (eps_ * eps_)));
  rebuild_.quota = std::max<std::uint64_t>(
      (upper + rebuild_.window - 1) / rebuild_.window, floor_quota);
  counter_ = 0;
  ops_ += h_vec_.size();
}

void MatchingLayer::finish_rebuild() {
  // Adopt the kernel result, dropping pairs deleted from H mid-rebuild. The
  // old matching only touches snapshot vertices, so clearing those suffices.
  for (VertexId v : rebuild_.to_sparse) mate_[v] = kNone;
  size_ = 0;
  for (Edge e : rebuild_.kernel->matched_edges()) {
    const Edge orig(rebuild_.to_sparse[e.u], rebuild_.to_sparse[e.v]);
    if (!h_contains(orig)) continue;
    mate_[orig.u] = orig.v;
    mate_[orig.v] = orig.u;
    size_ += 1;
  }
  ops_ += rebuild_.to_sparse.size() + size_;
  rebuild_.active = false;
  rebuild_.kernel.reset();
  size_at_rebuild_ = size_;
  threshold_ = std::max<std::uint32_t>(
      1, static_cast<std::uint32_t>(std::floor(eps_ * size_ / 8.0)));
}

void MatchingLayer::apply(const ChangeSet& cs) {
  if (cs.empty()) return;
  for (const ChangeSet::Item& item : cs.items) {
    if (item.added) {
      h_add(item.edge);
    } else {
      h_remove(item.edge);
      unmatch_edge(item.edge);
    }
  }
  counter_ += cs.size();

  if (!rebuild_.active && counter_ >= threshold_) {
    start_rebuild();
  }
  if (rebuild_.active) {
    const std::uint64_t before = rebuild_.kernel->work();
    bool done = rebuild_.kernel->run(rebuild_.quota * cs.size());
    if (!done && counter_ >= rebuild_.window) {
      done = rebuild_.kernel->run(~0ull);  // window exhausted; finish now
    }
    ops_ += rebuild_.kernel->work() - before;
    if (done) finish_rebuild();
  }
}

std::vector<Edge> MatchingLayer::matched_edges() const {
  std::vector<Edge> out;
  out.reserve(size_);
  for (VertexId v = 0; v < n_; ++v) {
    if (mate_[v] != kNone && v < mate_[v]) out.emplace_back(v, mate_[v]);
  }
  return out;
}

void MatchingLayer::self_check() const {
  std::uint32_t count = 0;
  for (VertexId v = 0; v < n_; ++v) {
    const VertexId m = mate_[v];
    if (m == kNone) continue;
    if (m >= n_ || mate_[m] != v) throw Error("matching self_check: mate asymmetry");
    if (!h_contains(Edge(v, m))) throw Error("matching self_check: matched edge not in H");
    ++count;
  }
  if (count != 2 * size_) throw Error("matching self_check: size mismatch");
}

}  // namespace dynmatch
