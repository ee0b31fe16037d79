#include "dynmatch/sparsifier.hpp"

#include <algorithm>
#include <cmath>

namespace dynmatch {

std::uint32_t Sparsifier::eta_fixed(double eps, double alpha) {
  // 5 * (5/eps + 1) * 2 * alpha
  return static_cast<std::uint32_t>(std::ceil(10.0 * (5.0 / eps + 1.0) * alpha - 1e-9));
}

std::uint32_t Sparsifier::eta_adaptive(double eps, std::uint64_t m_r) {
  // 5 * (5/eps + 1) * 4 * sqrt(m_R)
  return static_cast<std::uint32_t>(
      std::ceil(20.0 * (5.0 / eps + 1.0) * std::sqrt(static_cast<double>(m_r)) - 1e-9));
}

Sparsifier::Sparsifier(std::uint32_t n, SparsifierConfig config)
    : n_(n), config_(config), lm_(n), lu_(n), degree_(n, 0) {
  if (!(config_.eps > 0.0 && config_.eps < 1.0)) {
    throw InvalidParams("sparsifier eps must lie in (0, 1)");
  }
  if (config_.steps_per_update < 3) {
    throw InvalidParams("steps_per_update must be >= 3");
  }
  if (config_.eta_formula_scale <= 0.0) {
    throw InvalidParams("eta_formula_scale must be positive");
  }
  if (config_.mode == SparsifierMode::FixedArboricity) {
    if (config_.alpha <= 0.0) throw InvalidParams("alpha must be positive");
    eta_ = scaled_eta(eta_fixed(config_.eps, config_.alpha));
  } else {
    eta_ = 0;  // first restart sets it from m
  }
  eta_prev_ = eta_;
}

std::uint32_t Sparsifier::scaled_eta(std::uint32_t formula) const {
  if (config_.eta_formula_scale == 1.0) return formula;
  return std::max<std::uint32_t>(
      1, static_cast<std::uint32_t>(std::ceil(config_.eta_formula_scale * formula)));
}

std::uint32_t Sparsifier::degree_cap() const {
  return restart_active_ ? std::max(eta_, eta_prev_) : eta_;
}

void Sparsifier::ensure_edge(EdgeId id) {
  if (id >= in_gp_.size()) {
    const std::size_t sz = id + 1;
    in_gp_.resize(sz, 0);
    alive_.resize(sz, 0);
    marked_.resize(2 * sz, 0);
    ends_.resize(2 * sz, 0);
  }
}

void Sparsifier::mark_slot(std::uint32_t slot, GraphDelta& out) {
  const VertexId v = ends_[slot];
  marked_[slot] = 1;
  slot_links_.push_back(lm_[v], slot);
  ++ops_;
  if (marked_[slot ^ 1]) {
    const EdgeId id = slot >> 1;
    in_gp_[id] = 1;
    out.events.push_back({UpdateKind::Insert, Edge(ends_[2 * id], ends_[2 * id + 1])});
  }
}

void Sparsifier::unmark_slot(std::uint32_t slot, GraphDelta& out) {
  const VertexId v = ends_[slot];
  marked_[slot] = 0;
  slot_links_.erase(lm_[v], slot);
  slot_links_.push_back(lu_[v], slot);
  ++ops_;
  const EdgeId id = slot >> 1;
  if (in_gp_[id]) {
    in_gp_[id] = 0;
    out.events.push_back({UpdateKind::Delete, Edge(ends_[2 * id], ends_[2 * id + 1])});
  }
}

GraphDelta Sparsifier::on_insert(EdgeId id, VertexId u, VertexId v) {
  GraphDelta out;
  ensure_edge(id);
  const std::uint32_t su = 2 * id;
  const std::uint32_t sv = su + 1;
  ends_[su] = u;
  ends_[sv] = v;
  alive_[id] = 1;
  in_gp_[id] = 0;
  marked_[su] = marked_[sv] = 0;
  for (const VertexId x : {u, v}) {
    if (degree_[x] == 0) vertex_links_.push_back(non_isolated_, x);
    degree_[x] += 1;
  }
  m_ += 1;
  ops_ += 4;

  // Mark at each endpoint with spare capacity; double marks enter G'.
  if (lm_[u].size < eta_) {
    marked_[su] = 1;
    slot_links_.push_back(lm_[u], su);
  } else {
    slot_links_.push_back(lu_[u], su);
  }
  ++ops_;
  if (lm_[v].size < eta_) {
    mark_slot(sv, out);
  } else {
    slot_links_.push_back(lu_[v], sv);
    ++ops_;
  }
  return out;
}

GraphDelta Sparsifier::on_delete(EdgeId id, VertexId u, VertexId v) {
  GraphDelta out;
  const std::uint32_t su = 2 * id;
  const std::uint32_t sv = su + 1;
  if (in_gp_[id]) {
    in_gp_[id] = 0;
    out.events.push_back({UpdateKind::Delete, Edge(u, v)});
  }
  const bool was_marked_u = marked_[su];
  const bool was_marked_v = marked_[sv];
  slot_links_.erase(was_marked_u ? lm_[u] : lu_[u], su);
  slot_links_.erase(was_marked_v ? lm_[v] : lu_[v], sv);
  marked_[su] = marked_[sv] = 0;
  alive_[id] = 0;
  m_ -= 1;
  ops_ += 4;

  for (const VertexId x : {u, v}) {
    degree_[x] -= 1;
    if (degree_[x] == 0) {
      if (cursor_ == x) cursor_ = vertex_links_.next(x);
      vertex_links_.erase(non_isolated_, x);
      if (restart_active_ && cursor_ == kNone) finish_restart();
    }
    ++ops_;
  }

  // Refill a freed mark from the unmarked spares, FIFO.
  for (const std::uint32_t slot : {su, sv}) {
    if (!(slot == su ? was_marked_u : was_marked_v)) continue;
    const VertexId x = ends_[slot];
    if (lm_[x].size < eta_ && !lu_[x].empty()) {
      const std::uint32_t promoted = slot_links_.pop_front(lu_[x]);
      mark_slot(promoted, out);
    }
    ++ops_;
  }
  return out;
}

void Sparsifier::finish_restart() {
  restart_active_ = false;
  cursor_ = kNone;
  eta_prev_ = eta_;
}

void Sparsifier::rescan_step(GraphDelta& out, std::uint32_t& units) {
  const VertexId v = cursor_;
  const std::uint32_t target = std::min<std::uint64_t>(eta_, degree_[v]);
  if (lm_[v].size > target) {
    // newest marks released first; the oldest stay stable
    unmark_slot(lm_[v].tail, out);
    --units;
  } else if (lm_[v].size < target) {
    mark_slot(slot_links_.pop_front(lu_[v]), out);
    --units;
  } else {
    cursor_ = vertex_links_.next(v);
    --units;
    ++ops_;
    if (cursor_ == kNone) finish_restart();
  }
}

GraphDelta Sparsifier::restart_tick() {
  GraphDelta out;
  if (config_.mode != SparsifierMode::AdaptiveM) return out;

  if (!restart_active_) {
    const bool grew = m_ >= 2 * m_r_ && m_ > m_r_;
    const bool shrank = 2 * m_ <= m_r_ && m_r_ > 0;
    if (grew || shrank) {
      eta_prev_ = eta_;
      m_r_ = m_;
      eta_ = scaled_eta(eta_adaptive(config_.eps, m_r_));
      restart_active_ = true;
      cursor_ = non_isolated_.head;
      ops_ += 2;
      if (cursor_ == kNone) finish_restart();
    }
  }

  std::uint32_t units = config_.steps_per_update - 1;
  while (restart_active_ && units > 0) {
    rescan_step(out, units);
  }
  return out;
}

}  // namespace dynmatch
