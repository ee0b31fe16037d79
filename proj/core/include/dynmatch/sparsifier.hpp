#pragma once

#include <cstdint>
#include <vector>

#include "dynmatch/linked_lists.hpp"
#include "dynmatch/types.hpp"

namespace dynmatch {

enum class SparsifierMode : std::uint8_t { FixedArboricity, AdaptiveM };

struct SparsifierConfig {
  SparsifierMode mode = SparsifierMode::FixedArboricity;
  double eps = 0.5;
  double alpha = 1.0;                  // FixedArboricity only
  std::uint32_t steps_per_update = 8;  // c, gradual-restart budget
  // Scales the eta formula; below 1 it makes the cutoff bind on graphs far
  // too small for the real constants. Leave at 1 outside tests.
  double eta_formula_scale = 1.0;
};

/// Ordered edge events on the sparsified graph G'.
struct GraphDelta {
  std::vector<UpdateEvent> events;

  bool empty() const { return events.empty(); }
  std::size_t size() const { return events.size(); }
};

// Maintains the marked-edge matching sparsifier G': every vertex marks up to
// eta incident edges, and an edge marked by both endpoints belongs to G'.
// Insertions change G' by at most one edge and deletions by at most three
// (the deleted edge plus one promotion per endpoint). In AdaptiveM mode eta
// tracks sqrt(m) through periodic restarts executed gradually, c-1 work units
// per update, so the worst-case update cost stays constant.
class Sparsifier {
 public:
  Sparsifier(std::uint32_t n, SparsifierConfig config);

  GraphDelta on_insert(EdgeId id, VertexId u, VertexId v);
  GraphDelta on_delete(EdgeId id, VertexId u, VertexId v);
  /// AdaptiveM: starts a restart when m crossed a factor-2 boundary and
  /// advances the gradual rescan. No-op in FixedArboricity mode.
  GraphDelta restart_tick();

  std::uint32_t eta() const { return eta_; }
  /// Degree bound currently guaranteed for G' (covers a live restart).
  std::uint32_t degree_cap() const;
  bool restart_active() const { return restart_active_; }
  std::uint64_t edges() const { return m_; }
  std::uint64_t edges_at_restart() const { return m_r_; }

  std::uint32_t lm_size(VertexId v) const { return lm_[v].size; }
  std::uint32_t lu_size(VertexId v) const { return lu_[v].size; }
  std::uint32_t degree(VertexId v) const { return degree_[v]; }
  bool in_g_prime(EdgeId id) const { return id < in_gp_.size() && in_gp_[id]; }
  bool marks(EdgeId id, int side) const { return marked_[2 * id + side]; }

  std::uint64_t op_count() const { return ops_; }

  static std::uint32_t eta_fixed(double eps, double alpha);
  static std::uint32_t eta_adaptive(double eps, std::uint64_t m_r);

 private:
  std::uint32_t n_;
  SparsifierConfig config_;
  std::uint32_t eta_ = 0;
  std::uint32_t eta_prev_ = 0;
  std::uint64_t m_ = 0;
  std::uint64_t m_r_ = 0;
  bool restart_active_ = false;
  std::uint32_t cursor_ = kNone;

  std::vector<LinkedLists::List> lm_;
  std::vector<LinkedLists::List> lu_;
  LinkedLists slot_links_;
  std::vector<std::uint32_t> degree_;
  LinkedLists vertex_links_;
  LinkedLists::List non_isolated_;

  std::vector<std::uint8_t> marked_;  // per slot
  std::vector<std::uint8_t> in_gp_;   // per edge
  std::vector<std::uint8_t> alive_;
  std::vector<VertexId> ends_;

  std::uint64_t ops_ = 0;

  std::uint32_t scaled_eta(std::uint32_t formula) const;
  void ensure_edge(EdgeId id);
  void mark_slot(std::uint32_t slot, GraphDelta& out);
  void unmark_slot(std::uint32_t slot, GraphDelta& out);
  void rescan_step(GraphDelta& out, std::uint32_t& units);
  void finish_restart();
};

}  // namespace dynmatch
