#include "dynmatch/pipeline.hpp"

#include <algorithm>

namespace dynmatch {

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

std::uint64_t fold_event(std::uint64_t h, UpdateEvent ev) {
  const std::uint32_t words[3] = {static_cast<std::uint32_t>(ev.kind), ev.edge.u,
                                  ev.edge.v};
  return fnv1a(h, words, sizeof(words));
}

std::uint64_t fold_change(std::uint64_t h, const ChangeSet::Item& item) {
  const std::uint32_t words[3] = {item.added ? 1u : 0u, item.edge.u, item.edge.v};
  return fnv1a(h, words, sizeof(words));
}

}  // namespace

Pipeline::Pipeline(PipelineConfig config) : config_(config), g_(config.n) {
  if (config_.n == 0) throw InvalidParams("pipeline needs n >= 1");
  const EdcsParams params = EdcsParams::make(config_.beta, config_.gap);
  std::uint32_t cap = config_.degree_cap;
  if (config_.mode == PipelineMode::Full) {
    sparsifier_.emplace(config_.n, config_.sparsifier);
    g_prime_ = std::make_unique<DynamicGraph>(config_.n);
    if (cap == 0) cap = std::max<std::uint32_t>(1, sparsifier_->degree_cap());
  } else if (cap == 0) {
    cap = std::max<std::uint32_t>(1, config_.n - 1);
  }
  const EdcsMode mode =
      (config_.mode == PipelineMode::Eager) ? EdcsMode::Eager : EdcsMode::Lazy;
  edcs_ = std::make_unique<EdcsEngine>(config_.n, params, mode, cap,
                                       config_.batch_override);
  // One global rescale of the target eps covers the stacked approximations.
  matching_ = std::make_unique<MatchingLayer>(config_.n, config_.eps_target * 2.0 / 7.0);
}

ChangeSet Pipeline::feed_host_event(UpdateEvent ev, UpdateOutcome& out) {
  DynamicGraph& host = g_prime_ ? *g_prime_ : g_;
  ChangeSet cs;
  if (ev.kind == UpdateKind::Insert) {
    const EdgeId id = host.insert_edge(ev.edge);
    host_max_degree_ = std::max({host_max_degree_, host.degree(ev.edge.u),
                                 host.degree(ev.edge.v)});
    cs = edcs_->on_insert(id, ev.edge.u, ev.edge.v);
  } else {
    const EdgeId id = host.delete_edge(ev.edge);
    cs = edcs_->on_delete(id, ev.edge.u, ev.edge.v);
  }
  const EdcsEngine::UpdateStats& st = edcs_->last_stats();
  out.path_len_first = std::max(out.path_len_first, st.path_len_first);
  out.path_len_second = std::max(out.path_len_second, st.path_len_second);
  for (const ChangeSet::Item& item : cs.items) {
    h_digest_ = fold_change(h_digest_, item);
  }
  out.h_changes += static_cast<std::uint32_t>(cs.size());
  return cs;
}

UpdateOutcome Pipeline::apply(UpdateEvent ev) {
  UpdateOutcome out;
  last_host_events_.clear();
  const std::uint64_t spars_before = sparsifier_ ? sparsifier_->op_count() : 0;
  const std::uint64_t edcs_before = edcs_->op_count();
  const std::uint64_t matching_before = matching_->op_count();

  if (config_.mode == PipelineMode::Full) {
    GraphDelta delta;
    if (ev.kind == UpdateKind::Insert) {
      const EdgeId gid = g_.insert_edge(ev.edge);
      delta = sparsifier_->on_insert(gid, ev.edge.u, ev.edge.v);
    } else {
      const EdgeId gid = g_.delete_edge(ev.edge);
      delta = sparsifier_->on_delete(gid, ev.edge.u, ev.edge.v);
    }
    GraphDelta tick = sparsifier_->restart_tick();
    delta.events.insert(delta.events.end(), tick.events.begin(), tick.events.end());

    const std::uint32_t cap = std::max<std::uint32_t>(1, sparsifier_->degree_cap());
    if (cap != edcs_->degree_cap()) edcs_->set_degree_cap(cap);

    out.gprime_changes = static_cast<std::uint32_t>(delta.size());
    for (const UpdateEvent& host_ev : delta.events) {
      gprime_digest_ = fold_event(gprime_digest_, host_ev);
      last_host_events_.push_back(host_ev);
      const ChangeSet cs = feed_host_event(host_ev, out);
      matching_->apply(cs);
    }
  } else {
    last_host_events_.push_back(ev);
    const ChangeSet cs = feed_host_event(ev, out);
    matching_->apply(cs);
  }

  out.ops_sparsifier = (sparsifier_ ? sparsifier_->op_count() : 0) - spars_before;
  out.ops_edcs = edcs_->op_count() - edcs_before;
  out.ops_matching = matching_->op_count() - matching_before;
  out.h_size = edcs_->h_size();
  out.matching_size = matching_->size();
  return out;
}

}  // namespace dynmatch
