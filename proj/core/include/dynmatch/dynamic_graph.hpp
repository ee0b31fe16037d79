#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dynmatch/linked_lists.hpp"
#include "dynmatch/types.hpp"

namespace dynmatch {

// Adjacency structure over a fixed vertex universe [0, n). Edges get stable
// ids from a freelist; an id stays valid until the edge is deleted. Each edge
// has two directed slots (2*id, 2*id+1), one per endpoint, which upper layers
// use to index their own per-incidence state.
class DynamicGraph {
 public:
  explicit DynamicGraph(std::uint32_t n);

  std::uint32_t num_vertices() const { return n_; }
  std::uint32_t num_edges() const { return m_; }
  std::uint32_t degree(VertexId v) const;

  /// Inserts an absent edge, returns its id. Throws SelfLoop/DuplicateEdge.
  EdgeId insert_edge(Edge e);
  /// Deletes a present edge, returns the freed id. Throws MissingEdge.
  EdgeId delete_edge(Edge e);

  bool has_edge(Edge e) const;
  std::optional<EdgeId> edge_id(Edge e) const;

  VertexId slot_owner(std::uint32_t slot) const { return ends_[slot]; }
  VertexId slot_other(std::uint32_t slot) const { return ends_[slot ^ 1]; }
  Edge edge_of(EdgeId id) const { return Edge(ends_[2 * id], ends_[2 * id + 1]); }

  /// Snapshot of the live edge set, in insertion-list order.
  std::vector<Edge> edges() const;

  template <typename F>
  void for_each_edge(F&& f) const {
    for (std::uint32_t id = live_.head; id != kNone; id = lists_.next(id)) {
      f(static_cast<EdgeId>(id), Edge(ends_[2 * id], ends_[2 * id + 1]));
    }
  }

  /// Count of elementary dictionary/list operations performed so far.
  std::uint64_t op_count() const { return ops_; }

 private:
  std::uint32_t n_;
  std::uint32_t m_ = 0;
  std::vector<std::unordered_map<VertexId, EdgeId>> adj_;
  std::vector<std::uint32_t> degree_;
  std::vector<VertexId> ends_;  // 2 per edge id
  std::vector<EdgeId> free_;
  LinkedLists lists_;
  LinkedLists::List live_;
  mutable std::uint64_t ops_ = 0;

  void check_vertex(VertexId v) const;
};

}  // namespace dynmatch
