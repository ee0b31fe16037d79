#pragma once

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "dynmatch/edcs.hpp"
#include "dynmatch/oracle.hpp"
#include "dynmatch/types.hpp"

namespace dynmatch {

// Serves a matching M over the bounded-degree subgraph H, consuming the
// H-change stream emitted by the EDCS layer. Deletions are patched into the
// served matching immediately; growth is recovered by periodic rebuilds that
// run an exact blossom kernel over a frozen snapshot of H, sliced across the
// following update slots (double buffering: the old matching keeps serving
// until the fresh one is ready). The rebuild threshold t = max(1,
// floor(eps*s/8)) keeps the drift between mu(H) and the served size within
// the (1+eps) budget, and the slice quota is sized so a rebuild always
// completes within t H-changes.
class MatchingLayer {
 public:
  MatchingLayer(std::uint32_t n, double eps);

  void apply(const ChangeSet& cs);

  std::uint32_t size() const { return size_; }
  VertexId mate(VertexId v) const { return mate_[v]; }
  std::vector<Edge> matched_edges() const;

  std::uint32_t h_size() const { return static_cast<std::uint32_t>(h_vec_.size()); }
  const std::vector<Edge>& h_mirror() const { return h_vec_; }

  std::uint64_t counter() const { return counter_; }
  std::uint32_t threshold() const { return threshold_; }
  std::uint32_t size_at_rebuild() const { return size_at_rebuild_; }
  bool rebuild_active() const { return rebuild_.active; }
  std::uint64_t op_count() const { return ops_; }
  std::uint64_t last_quota() const { return rebuild_.quota; }

  /// Checks mate symmetry and that every matched edge lies in H. Test only.
  void self_check() const;

 private:
  std::uint32_t n_;
  double eps_;
  std::vector<VertexId> mate_;
  std::uint32_t size_ = 0;

  std::unordered_map<std::uint64_t, std::uint32_t> h_index_;
  std::vector<Edge> h_vec_;

  std::uint64_t counter_ = 0;
  std::uint32_t threshold_ = 1;
  std::uint32_t size_at_rebuild_ = 0;

  struct Rebuild {
    bool active = false;
    std::unique_ptr<oracle::BlossomMatcher> kernel;
    std::uint64_t quota = 0;
    std::uint32_t window = 1;
    std::vector<VertexId> to_dense;   // compaction of the frozen snapshot
    std::vector<VertexId> to_sparse;
  } rebuild_;

  std::uint64_t ops_ = 0;

  bool h_contains(Edge e) const { return h_index_.count(edge_key(e)) != 0; }
  void h_add(Edge e);
  void h_remove(Edge e);
  void unmatch_edge(Edge e);
  void start_rebuild();
  void finish_rebuild();
};

}  // namespace dynmatch
