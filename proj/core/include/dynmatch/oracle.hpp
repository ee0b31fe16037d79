#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dynmatch/types.hpp"

namespace dynmatch::oracle {

inline constexpr std::size_t kBruteForceEdgeCap = 26;

/// Exact maximum matching size by branch and bound over edge inclusion.
/// Throws TooLarge above kBruteForceEdgeCap edges.
std::uint32_t max_matching_bruteforce(std::uint32_t n, const std::vector<Edge>& edges);

// Exact maximum matching on general graphs: repeated augmenting-path search
// with blossom contraction, O(n*m) per augmentation. Resumable: run(budget)
// advances by roughly `budget` edge scans and reports whether the search is
// complete, so a caller can slice the computation. The edge set is frozen at
// construction.
class BlossomMatcher {
 public:
  BlossomMatcher(std::uint32_t n, const std::vector<Edge>& edges);

  /// Optional warm start; pairs must form a matching over the given edges.
  void warm_start(const std::vector<Edge>& matched);

  /// Runs until completion or until ~budget operations were spent.
  /// Pauses only between root phases. Returns true when complete.
  bool run(std::uint64_t budget);
  bool done() const { return done_; }

  std::uint32_t size() const { return size_; }
  VertexId mate(VertexId v) const { return mate_[v]; }
  std::vector<Edge> matched_edges() const;

  std::uint64_t work() const { return work_; }
  /// Conservative bound on the total work a full run can take.
  std::uint64_t work_upper_bound() const;

 private:
  std::uint32_t n_;
  std::vector<std::uint32_t> adj_head_;
  std::vector<std::uint32_t> adj_next_;
  std::vector<VertexId> adj_to_;
  std::vector<VertexId> mate_;
  std::uint32_t size_ = 0;
  VertexId next_root_ = 0;
  bool done_ = false;
  std::uint64_t work_ = 0;

  // per-phase scratch
  std::vector<VertexId> parent_, base_;
  std::vector<char> in_queue_, in_blossom_, on_path_;
  std::vector<VertexId> queue_;

  bool augment_from(VertexId root);
  VertexId find_lca(VertexId a, VertexId b);
  void mark_blossom_path(VertexId v, VertexId b, VertexId child);
};

std::uint32_t max_matching_blossom_size(std::uint32_t n, const std::vector<Edge>& edges);

struct EdcsReport {
  std::vector<Edge> violations_p1;  // edges in H with w > bound_hi
  std::vector<Edge> violations_p2;  // edges outside H with w < bound_lo
  std::uint32_t max_weight_in_h = 0;
  std::uint32_t min_weight_outside = kNone;

  bool ok() const { return violations_p1.empty() && violations_p2.empty(); }
};

/// Full scan of (P1)/(P2) with true H-degrees. h must be a subset of g.
EdcsReport verify_edcs(std::uint32_t n, const std::vector<Edge>& g,
                       const std::vector<Edge>& h, double bound_hi, double bound_lo);

struct SparsifierRatio {
  std::uint32_t mu_g = 0;
  std::uint32_t mu_g_prime = 0;
  bool pass = false;
};

/// pass <=> mu(g) <= (1+eps) * mu(g').
SparsifierRatio verify_sparsifier_ratio(std::uint32_t n, const std::vector<Edge>& g,
                                        const std::vector<Edge>& g_prime, double eps);

}  // namespace dynmatch::oracle
