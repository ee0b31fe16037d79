#include "dynmatch/dynamic_graph.hpp"

namespace dynmatch {

DynamicGraph::DynamicGraph(std::uint32_t n) : n_(n), adj_(n), degree_(n, 0) {}

void DynamicGraph::check_vertex(VertexId v) const {
  if (v >= n_) {
    throw InvalidParams("vertex id " + std::to_string(v) + " out of range [0, " +
                        std::to_string(n_) + ")");
  }
}

std::uint32_t DynamicGraph::degree(VertexId v) const {
  check_vertex(v);
  return degree_[v];
}

EdgeId DynamicGraph::insert_edge(Edge e) {
  if (e.u == e.v) {
    throw SelfLoop("self-loop (" + std::to_string(e.u) + ")");
  }
  check_vertex(e.u);
  check_vertex(e.v);
  ops_ += 1;
  if (adj_[e.u].count(e.v)) {
    throw DuplicateEdge("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                        ") already present");
  }
  EdgeId id;
  if (!free_.empty()) {
    id = free_.back();
    free_.pop_back();
  } else {
    id = static_cast<EdgeId>(ends_.size() / 2);
    ends_.resize(ends_.size() + 2);
  }
  ends_[2 * id] = e.u;
  ends_[2 * id + 1] = e.v;
  adj_[e.u].emplace(e.v, id);
  adj_[e.v].emplace(e.u, id);
  degree_[e.u] += 1;
  degree_[e.v] += 1;
  lists_.push_back(live_, id);
  m_ += 1;
  ops_ += 4;
  return id;
}

EdgeId DynamicGraph::delete_edge(Edge e) {
  check_vertex(e.u);
  check_vertex(e.v);
  ops_ += 1;
  auto it = adj_[e.u].find(e.v);
  if (it == adj_[e.u].end()) {
    throw MissingEdge("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                      ") not present");
  }
  const EdgeId id = it->second;
  adj_[e.u].erase(it);
  adj_[e.v].erase(e.u);
  degree_[e.u] -= 1;
  degree_[e.v] -= 1;
  lists_.erase(live_, id);
  free_.push_back(id);
  m_ -= 1;
  ops_ += 4;
  return id;
}

bool DynamicGraph::has_edge(Edge e) const {
  check_vertex(e.u);
  check_vertex(e.v);
  ops_ += 1;
  return adj_[e.u].count(e.v) != 0;
}

std::optional<EdgeId> DynamicGraph::edge_id(Edge e) const {
  check_vertex(e.u);
  check_vertex(e.v);
  ops_ += 1;
  auto it = adj_[e.u].find(e.v);
  if (it == adj_[e.u].end()) return std::nullopt;
  return it->second;
}

std::vector<Edge> DynamicGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(m_);
  for_each_edge([&](EdgeId, Edge e) { out.push_back(e); });
  return out;
}

}  // namespace dynmatch
