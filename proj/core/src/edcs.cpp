#include "dynmatch/edcs.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dynmatch {

EdcsParams EdcsParams::make(std::uint32_t beta, double gap) {
  if (!(gap > 0.0 && gap < 0.5)) {
    throw InvalidParams("gap must lie in (0, 1/2), got " + std::to_string(gap));
  }
  if (gap * beta < 2.0 - 1e-9) {
    throw InvalidParams("gap*beta must be >= 2 to separate the full and deficient bands");
  }
  EdcsParams p;
  p.beta = beta;
  p.gap = gap;
  p.low_threshold = static_cast<std::uint32_t>(std::ceil((1.0 - gap) * beta - 1e-9));
  if (p.low_threshold >= beta) {
    throw InvalidParams("low threshold must be strictly below beta");
  }
  return p;
}

CalibratedParams calibrate(double eps_target, std::uint32_t degree_cap) {
  if (!(eps_target > 0.0 && eps_target < 0.5)) {
    throw InvalidEps("eps must lie in (0, 1/2), got " + std::to_string(eps_target));
  }
  if (degree_cap < 1) throw InvalidParams("degree cap must be >= 1");
  CalibratedParams c;
  c.eps_target = eps_target;
  c.lambda = eps_target / 100.0;
  c.lambda_prime = c.lambda / 2.0;
  const double from_degree = c.lambda_prime * std::sqrt(static_cast<double>(degree_cap));
  const double floor_term = 32.0 / (c.lambda * c.lambda * c.lambda);
  c.beta_theoretical = std::max(from_degree, floor_term);
  c.beta = static_cast<std::uint64_t>(std::ceil(c.beta_theoretical));
  c.degree_cap = degree_cap;
  c.engineering_preset = c.beta > kPracticalBetaCap;
  return c;
}

std::vector<Edge> ChangeSet::added() const {
  std::vector<Edge> out;
  for (const Item& it : items) {
    if (it.added) out.push_back(it.edge);
  }
  return out;
}

std::vector<Edge> ChangeSet::removed() const {
  std::vector<Edge> out;
  for (const Item& it : items) {
    if (!it.added) out.push_back(it.edge);
  }
  return out;
}

EdcsEngine::EdcsEngine(std::uint32_t n, EdcsParams params, EdcsMode mode,
                       std::uint32_t degree_cap, std::uint32_t batch_override)
    : n_(n),
      params_(params),
      mode_(mode),
      degree_cap_(degree_cap),
      batch_override_(batch_override),
      key_cap_(params.beta + std::max<std::uint32_t>(8, params.beta / 8)),
      d_true_(n, 0),
      d_filed_(n, 0),
      active_full_(n),
      active_def_(n),
      queue_(n),
      bucket_(static_cast<std::size_t>(n) * 2 * (key_cap_ + 1)),
      bucket_active_(static_cast<std::size_t>(n) * 2 * (key_cap_ + 1), 0) {
  if (mode_ == EdcsMode::Lazy && degree_cap_ == 0) {
    throw InvalidParams("lazy mode needs a positive degree cap");
  }
  recompute_batch();
  // Walks are provably shorter than 5/(2*gap); anything past a generous
  // multiple means the structure is corrupt, and looping would hide it.
  walk_cap_ = static_cast<std::uint32_t>(8.0 * (5.0 / (2.0 * params_.gap))) + 16;
}

void EdcsEngine::recompute_batch() {
  if (mode_ == EdcsMode::Eager) {
    batch_size_ = kNone;  // rotate the whole queue
    return;
  }
  if (batch_override_ > 0) {
    batch_size_ = batch_override_;
    return;
  }
  const double b = 10.0 * static_cast<double>(degree_cap_) /
                   (params_.gap * static_cast<double>(params_.beta));
  batch_size_ = std::max<std::uint32_t>(1, static_cast<std::uint32_t>(std::ceil(b - 1e-9)));
}

void EdcsEngine::set_degree_cap(std::uint32_t cap) {
  degree_cap_ = cap;
  recompute_batch();
}

void EdcsEngine::ensure_edge(EdgeId id) {
  if (id >= in_h_.size()) {
    const std::size_t sz = id + 1;
    in_h_.resize(sz, 0);
    alive_.resize(sz, 0);
    park_epoch_.resize(sz, 0);
    ends_.resize(2 * sz, 0);
    est_.resize(2 * sz, 0);
    filed_.resize(2 * sz, 0);
  }
}

bool EdcsEngine::bucket_qualifies(VertexId own, std::uint8_t family,
                                  std::uint32_t key) const {
  if (family == kFamilyH) {
    return static_cast<std::int64_t>(key) >=
           static_cast<std::int64_t>(params_.beta) - static_cast<std::int64_t>(d_filed_[own]);
  }
  return static_cast<std::int64_t>(key) <=
         static_cast<std::int64_t>(params_.low_threshold) -
             static_cast<std::int64_t>(d_filed_[own]);
}

void EdcsEngine::maybe_activate(VertexId own, std::uint8_t family, std::int64_t key) {
  if (key < 0 || key > static_cast<std::int64_t>(key_cap_)) return;
  const std::uint32_t b = bucket_index(own, family, static_cast<std::uint32_t>(key));
  if (bucket_active_[b] || bucket_[b].empty()) return;
  LinkedLists::List& alist = (family == kFamilyH) ? active_full_[own] : active_def_[own];
  bucket_links_.push_back(alist, b);
  bucket_active_[b] = 1;
  ++ops_;
}

void EdcsEngine::maybe_deactivate(VertexId own, std::uint8_t family, std::int64_t key) {
  if (key < 0 || key > static_cast<std::int64_t>(key_cap_)) return;
  const std::uint32_t b = bucket_index(own, family, static_cast<std::uint32_t>(key));
  if (!bucket_active_[b]) return;
  LinkedLists::List& alist = (family == kFamilyH) ? active_full_[own] : active_def_[own];
  bucket_links_.erase(alist, b);
  bucket_active_[b] = 0;
  ++ops_;
}

void EdcsEngine::file_slot(std::uint32_t slot) {
  const VertexId own = ends_[slot];
  const std::uint8_t family = in_h_[slot >> 1] ? kFamilyH : kFamilyNonH;
  const std::uint32_t key = std::min(est_[slot], key_cap_);
  const std::uint32_t b = bucket_index(own, family, key);
  const bool was_empty = bucket_[b].empty();
  slot_links_.push_back(bucket_[b], slot);
  filed_[slot] = 1;
  ++ops_;
  if (was_empty && bucket_qualifies(own, family, key)) {
    maybe_activate(own, family, key);
  }
}

void EdcsEngine::unfile_slot(std::uint32_t slot) {
  const VertexId own = ends_[slot];
  const std::uint8_t family = in_h_[slot >> 1] ? kFamilyH : kFamilyNonH;
  const std::uint32_t key = std::min(est_[slot], key_cap_);
  const std::uint32_t b = bucket_index(own, family, key);
  slot_links_.erase(bucket_[b], slot);
  filed_[slot] = 0;
  ++ops_;
  if (bucket_[b].empty() && bucket_active_[b]) {
    maybe_deactivate(own, family, key);
  }
}

void EdcsEngine::park(EdgeId id) {
  if (park_epoch_[id] != epoch_) {
    park_epoch_[id] = epoch_;
    parked_.push_back(id);
  }
}

void EdcsEngine::flip_in(EdgeId id) {
  const std::uint32_t s0 = 2 * id;
  const std::uint32_t s1 = s0 + 1;
  if (filed_[s0]) unfile_slot(s0);
  if (filed_[s1]) unfile_slot(s1);
  park(id);
  in_h_[id] = 1;
  edge_links_.push_back(h_list_, id);
  d_true_[ends_[s0]] += 1;
  d_true_[ends_[s1]] += 1;
  current_.items.push_back({Edge(ends_[s0], ends_[s1]), true});
  ops_ += 4;
}

void EdcsEngine::flip_out(EdgeId id) {
  const std::uint32_t s0 = 2 * id;
  const std::uint32_t s1 = s0 + 1;
  if (filed_[s0]) unfile_slot(s0);
  if (filed_[s1]) unfile_slot(s1);
  park(id);
  in_h_[id] = 0;
  edge_links_.erase(h_list_, id);
  d_true_[ends_[s0]] -= 1;
  d_true_[ends_[s1]] -= 1;
  current_.items.push_back({Edge(ends_[s0], ends_[s1]), false});
  ops_ += 4;
}

std::uint32_t EdcsEngine::pop_candidate(VertexId p, bool full) const {
  const LinkedLists::List& alist = full ? active_full_[p] : active_def_[p];
  ++ops_;
  if (alist.empty()) return kNone;
  return bucket_[alist.head].head;
}

void EdcsEngine::refresh_filed(VertexId p) {
  while (d_filed_[p] < d_true_[p]) {
    d_filed_[p] += 1;
    ops_ += 2;
    // full boundary dropped by one: the bucket at the new boundary joins
    maybe_activate(p, kFamilyH,
                   static_cast<std::int64_t>(params_.beta) - d_filed_[p]);
    // deficient boundary dropped: the bucket at the old boundary leaves
    maybe_deactivate(p, kFamilyNonH,
                     static_cast<std::int64_t>(params_.low_threshold) - (d_filed_[p] - 1));
  }
  while (d_filed_[p] > d_true_[p]) {
    ops_ += 2;
    maybe_deactivate(p, kFamilyH,
                     static_cast<std::int64_t>(params_.beta) - d_filed_[p]);
    d_filed_[p] -= 1;
    maybe_activate(p, kFamilyNonH,
                   static_cast<std::int64_t>(params_.low_threshold) - d_filed_[p]);
  }
}

void EdcsEngine::notify_batch(VertexId p) {
  LinkedLists::List& q = queue_[p];
  const std::uint32_t count = std::min<std::uint32_t>(batch_size_, q.size);
  for (std::uint32_t i = 0; i < count; ++i) {
    const std::uint32_t s = queue_links_.pop_front(q);
    const std::uint32_t sib = s ^ 1;
    if (filed_[sib]) {
      unfile_slot(sib);
      est_[sib] = d_true_[p];
      file_slot(sib);
    } else {
      est_[sib] = d_true_[p];  // parked; refiled with the fresh key later
    }
    queue_links_.push_back(q, s);
    ops_ += 2;
  }
  last_stats_.notifications += count;
}

std::uint32_t EdcsEngine::walk(VertexId start, bool seek_full) {
  std::uint32_t len = 0;
  VertexId p = start;
  bool full = seek_full;
  while (true) {
    const std::uint32_t slot = pop_candidate(p, full);
    if (slot == kNone) {
      refresh_filed(p);
      notify_batch(p);
      break;
    }
    const EdgeId id = slot >> 1;
    const VertexId next = ends_[slot ^ 1];
    if (full) {
      flip_out(id);
    } else {
      flip_in(id);
    }
    ++len;
    if (len > walk_cap_) {
      throw Error("alternating walk exceeded its provable length bound");
    }
    p = next;
    full = !full;
  }
  ++last_stats_.walks;
  if (last_stats_.walks == 1) {
    last_stats_.path_len_first = len;
  } else {
    last_stats_.path_len_second = len;
  }
  return len;
}

void EdcsEngine::begin_update() {
  ++epoch_;
  parked_.clear();
  current_.items.clear();
  last_stats_ = UpdateStats{};
  last_stats_.ops = ops_;
}

ChangeSet EdcsEngine::end_update() {
  for (EdgeId id : parked_) {
    if (!alive_[id]) continue;
    file_slot(2 * id);
    file_slot(2 * id + 1);
    ops_ += 2;
  }
  parked_.clear();
  last_stats_.h_changes = static_cast<std::uint32_t>(current_.items.size());
  last_stats_.ops = ops_ - last_stats_.ops;
  return std::move(current_);
}

ChangeSet EdcsEngine::on_insert(EdgeId id, VertexId u, VertexId v) {
  begin_update();
  ensure_edge(id);
  const std::uint32_t su = 2 * id;
  const std::uint32_t sv = su + 1;
  ends_[su] = u;
  ends_[sv] = v;
  alive_[id] = 1;
  in_h_[id] = 0;
  est_[su] = d_true_[v];
  est_[sv] = d_true_[u];
  filed_[su] = filed_[sv] = 0;
  queue_links_.push_back(queue_[u], su);
  queue_links_.push_back(queue_[v], sv);
  live_links_.push_back(live_list_, id);
  ops_ += 6;

  if (d_true_[u] + d_true_[v] < params_.low_threshold) {
    flip_in(id);
    walk(v, /*seek_full=*/true);
    walk(u, /*seek_full=*/true);
  } else {
    file_slot(su);
    file_slot(sv);
  }
  return end_update();
}

ChangeSet EdcsEngine::on_delete(EdgeId id, VertexId u, VertexId v) {
  begin_update();
  const std::uint32_t su = 2 * id;
  const std::uint32_t sv = su + 1;
  if (filed_[su]) unfile_slot(su);
  if (filed_[sv]) unfile_slot(sv);
  queue_links_.erase(queue_[u], su);
  queue_links_.erase(queue_[v], sv);
  live_links_.erase(live_list_, id);
  alive_[id] = 0;
  ops_ += 6;

  if (in_h_[id]) {
    in_h_[id] = 0;
    edge_links_.erase(h_list_, id);
    d_true_[u] -= 1;
    d_true_[v] -= 1;
    current_.items.push_back({Edge(u, v), false});
    ops_ += 2;
    walk(v, /*seek_full=*/false);
    walk(u, /*seek_full=*/false);
  }
  return end_update();
}

std::vector<Edge> EdcsEngine::h_edges() const {
  std::vector<Edge> out;
  out.reserve(h_list_.size);
  for (std::uint32_t id = h_list_.head; id != kNone; id = edge_links_.next(id)) {
    out.emplace_back(ends_[2 * id], ends_[2 * id + 1]);
  }
  return out;
}

EdcsEngine::DiscrepancyReport EdcsEngine::check_discrepancy() const {
  DiscrepancyReport r;
  for (std::uint32_t id = live_list_.head; id != kNone; id = live_links_.next(id)) {
    for (std::uint32_t side = 0; side < 2; ++side) {
      const std::uint32_t slot = 2 * id + side;
      const VertexId other = ends_[slot ^ 1];
      const std::int64_t err = static_cast<std::int64_t>(d_true_[other]) -
                               static_cast<std::int64_t>(est_[slot]);
      r.max_over = std::max(r.max_over, err);
      r.max_under = std::max(r.max_under, -err);
    }
  }
  return r;
}

std::vector<std::uint32_t> EdcsEngine::active_slots(VertexId p, bool full) const {
  std::vector<std::uint32_t> out;
  const LinkedLists::List& alist = full ? active_full_[p] : active_def_[p];
  for (std::uint32_t b = alist.head; b != kNone; b = bucket_links_.next(b)) {
    for (std::uint32_t s = bucket_[b].head; s != kNone; s = slot_links_.next(s)) {
      out.push_back(s);
    }
  }
  return out;
}

void EdcsEngine::self_check() const {
  std::vector<std::uint32_t> dh(n_, 0);
  std::vector<std::uint32_t> owned(n_, 0);
  std::uint32_t live = 0;
  for (std::uint32_t id = live_list_.head; id != kNone; id = live_links_.next(id)) {
    ++live;
    if (!alive_[id]) throw Error("self_check: dead edge on live list");
    if (in_h_[id]) {
      dh[ends_[2 * id]] += 1;
      dh[ends_[2 * id + 1]] += 1;
    }
    for (std::uint32_t side = 0; side < 2; ++side) {
      const std::uint32_t slot = 2 * id + side;
      if (!filed_[slot]) throw Error("self_check: unfiled slot at quiescence");
      owned[ends_[slot]] += 1;
    }
  }
  for (VertexId v = 0; v < n_; ++v) {
    if (d_filed_[v] != d_true_[v]) throw Error("self_check: filed degree out of date");
    if (dh[v] != d_true_[v]) throw Error("self_check: H-degree mismatch");
    if (queue_[v].size != owned[v]) throw Error("self_check: queue size mismatch");
  }
  if (h_list_.size > live) throw Error("self_check: H larger than live set");

  // Active lists must contain exactly the qualifying slots.
  for (VertexId v = 0; v < n_; ++v) {
    for (int full = 0; full < 2; ++full) {
      std::vector<std::uint32_t> got = active_slots(v, full == 1);
      std::vector<std::uint32_t> expect;
      for (std::uint32_t id = live_list_.head; id != kNone; id = live_links_.next(id)) {
        for (std::uint32_t side = 0; side < 2; ++side) {
          const std::uint32_t slot = 2 * id + side;
          if (ends_[slot] != v) continue;
          const bool is_h = in_h_[id] != 0;
          if ((full == 1) != is_h) continue;
          const std::uint32_t key = std::min(est_[slot], key_cap_);
          if (bucket_qualifies(v, is_h ? kFamilyH : kFamilyNonH, key)) {
            expect.push_back(slot);
          }
        }
      }
      std::sort(got.begin(), got.end());
      std::sort(expect.begin(), expect.end());
      if (got != expect) throw Error("self_check: active set mismatch");
    }
  }
}

}  // namespace dynmatch
