#pragma once

#include <cstdint>
#include <vector>

#include "dynmatch/linked_lists.hpp"
#include "dynmatch/types.hpp"

namespace dynmatch {

// Parameters of a (beta, (1-gap)*beta)-EDCS. The gap band must span at least
// two integer weights (gap*beta >= 2), otherwise the full and deficient
// classes collide.
struct EdcsParams {
  std::uint32_t beta = 0;
  double gap = 0.0;
  std::uint32_t low_threshold = 0;

  static EdcsParams make(std::uint32_t beta, double gap);

  double gamma() const { return beta * (1.0 + gap / 10.0); }
  double gamma_minus() const { return (1.0 - 2.0 * gap) * gamma(); }
};

// Parameter calibration for a target approximation eps, following the
// lambda = eps/100, lambda' = lambda/2, beta >= max(lambda'*sqrt(Dcap),
// 32*lambda^-3) schedule. The theoretical beta is astronomically large for
// desk-scale eps, so callers normally run with explicit (beta, gap) presets;
// `engineering_preset` flags when that is the only feasible route.
struct CalibratedParams {
  double eps_target = 0.0;
  double lambda = 0.0;
  double lambda_prime = 0.0;
  double beta_theoretical = 0.0;
  std::uint64_t beta = 0;
  std::uint32_t degree_cap = 0;
  bool engineering_preset = false;
};

inline constexpr std::uint64_t kPracticalBetaCap = 1000000;

CalibratedParams calibrate(double eps_target, std::uint32_t degree_cap);

/// Ordered log of H-membership flips performed by one update.
struct ChangeSet {
  struct Item {
    Edge edge;
    bool added = false;
  };
  std::vector<Item> items;

  bool empty() const { return items.empty(); }
  std::size_t size() const { return items.size(); }
  std::vector<Edge> added() const;
  std::vector<Edge> removed() const;
};

enum class EdcsMode : std::uint8_t { Eager, Lazy };

// Maintains an EDCS H of a host graph under edge updates by augmenting one
// alternating walk of full/deficient edges per endpoint. Both variants share
// the machinery; they differ only in how many neighbors get notified after a
// permanent degree change:
//   Eager: all of them, so every estimate is exact at quiescence and H is a
//          (beta, ceil((1-gap)*beta))-EDCS.
//   Lazy:  the first ceil(10*degree_cap/(gap*beta)) entries of a cyclic
//          queue, which bounds the estimate discrepancy by gap*beta/10 and
//          yields a (gamma, (1-2*gap)*gamma)-EDCS for gamma = beta*(1+gap/10).
//
// Classification lives in per-vertex bucket arrays keyed by the owner's
// estimate of the neighbor's H-degree. Full/deficient candidacy is a key
// threshold driven by the owner's *filed* degree, which is published only at
// walk ends; nonempty candidate buckets sit in per-vertex active lists, so
// emptiness tests and pops are O(1). Edges flipped by the current update are
// parked (removed from candidacy) until the update completes, mirroring the
// move of traversed edges into the spectator list.
class EdcsEngine {
 public:
  struct UpdateStats {
    std::uint32_t path_len_first = 0;
    std::uint32_t path_len_second = 0;
    std::uint32_t walks = 0;
    std::uint32_t h_changes = 0;
    std::uint32_t notifications = 0;
    std::uint64_t ops = 0;
  };

  EdcsEngine(std::uint32_t n, EdcsParams params, EdcsMode mode,
             std::uint32_t degree_cap, std::uint32_t batch_override = 0);

  /// Host edge (u,v) was just inserted; id is its stable host edge id.
  ChangeSet on_insert(EdgeId id, VertexId u, VertexId v);
  /// Host edge (u,v) with id is being deleted.
  ChangeSet on_delete(EdgeId id, VertexId u, VertexId v);

  const EdcsParams& params() const { return params_; }
  EdcsMode mode() const { return mode_; }
  std::uint32_t batch_size() const { return batch_size_; }
  std::uint32_t degree_cap() const { return degree_cap_; }
  /// Refreshes the notification batch size after the host degree cap moved.
  void set_degree_cap(std::uint32_t cap);

  std::uint32_t num_vertices() const { return n_; }
  std::uint32_t h_size() const { return h_list_.size; }
  std::uint32_t dh(VertexId v) const { return d_true_[v]; }
  bool in_h(EdgeId id) const { return id < in_h_.size() && in_h_[id]; }
  std::vector<Edge> h_edges() const;

  const UpdateStats& last_stats() const { return last_stats_; }
  std::uint64_t op_count() const { return ops_; }

  struct DiscrepancyReport {
    std::int64_t max_over = 0;   // max of d_H(x) - est_w(x)
    std::int64_t max_under = 0;  // max of est_w(x) - d_H(x)

    std::int64_t dis() const { return max_over; }
    std::int64_t max_abs() const { return max_over > max_under ? max_over : max_under; }
  };
  /// Full scan of every estimate against the true degree. Test/diagnostic only.
  DiscrepancyReport check_discrepancy() const;

  /// Exhaustive structural audit (quiescent state). Throws Error on any
  /// inconsistency. Test only: O(n * beta + m).
  void self_check() const;

  /// Slots reachable from the active full/deficient lists of p, in pop order.
  std::vector<std::uint32_t> active_slots(VertexId p, bool full) const;
  std::uint32_t slot_estimate(std::uint32_t slot) const { return est_[slot]; }
  VertexId slot_owner(std::uint32_t slot) const { return ends_[slot]; }
  VertexId slot_other(std::uint32_t slot) const { return ends_[slot ^ 1]; }

 private:
  static constexpr std::uint8_t kFamilyH = 0;
  static constexpr std::uint8_t kFamilyNonH = 1;

  std::uint32_t n_;
  EdcsParams params_;
  EdcsMode mode_;
  std::uint32_t degree_cap_;
  std::uint32_t batch_override_;
  std::uint32_t batch_size_ = 1;
  std::uint32_t key_cap_;

  // per vertex
  std::vector<std::uint32_t> d_true_;
  std::vector<std::uint32_t> d_filed_;
  std::vector<LinkedLists::List> active_full_;
  std::vector<LinkedLists::List> active_def_;
  std::vector<LinkedLists::List> queue_;

  // flat bucket storage: (vertex * 2 + family) * (key_cap + 1) + key
  std::vector<LinkedLists::List> bucket_;
  std::vector<std::uint8_t> bucket_active_;

  LinkedLists slot_links_;    // slot membership in bucket lists
  LinkedLists queue_links_;   // slot membership in cyclic queues
  LinkedLists bucket_links_;  // bucket membership in active lists
  LinkedLists edge_links_;    // edge membership in the H list and live list
  LinkedLists live_links_;
  LinkedLists::List h_list_;
  LinkedLists::List live_list_;

  // per edge / per slot
  std::vector<std::uint8_t> in_h_;
  std::vector<std::uint8_t> alive_;
  std::vector<std::uint32_t> park_epoch_;
  std::vector<VertexId> ends_;
  std::vector<std::uint32_t> est_;
  std::vector<std::uint8_t> filed_;

  std::uint32_t epoch_ = 0;
  std::vector<EdgeId> parked_;
  ChangeSet current_;
  UpdateStats last_stats_;
  mutable std::uint64_t ops_ = 0;
  std::uint32_t walk_cap_;

  void recompute_batch();
  void ensure_edge(EdgeId id);
  std::uint32_t bucket_index(VertexId own, std::uint8_t family, std::uint32_t key) const {
    return (own * 2u + family) * (key_cap_ + 1) + key;
  }
  bool bucket_qualifies(VertexId own, std::uint8_t family, std::uint32_t key) const;
  void maybe_activate(VertexId own, std::uint8_t family, std::int64_t key);
  void maybe_deactivate(VertexId own, std::uint8_t family, std::int64_t key);
  void file_slot(std::uint32_t slot);
  void unfile_slot(std::uint32_t slot);
  void park(EdgeId id);
  void flip_in(EdgeId id);
  void flip_out(EdgeId id);
  std::uint32_t pop_candidate(VertexId p, bool full) const;
  void refresh_filed(VertexId p);
  void notify_batch(VertexId p);
  std::uint32_t walk(VertexId start, bool seek_full);
  void begin_update();
  ChangeSet end_update();
};

}  // namespace dynmatch
