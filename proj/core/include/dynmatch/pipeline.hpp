#pragma once

#include <cstdint>
#include <memory>
#include <optional>

#include "dynmatch/dynamic_graph.hpp"
#include "dynmatch/edcs.hpp"
#include "dynmatch/matching.hpp"
#include "dynmatch/sparsifier.hpp"
#include "dynmatch/types.hpp"

namespace dynmatch {

enum class PipelineMode : std::uint8_t { Eager, Lazy, Full };

struct PipelineConfig {
  PipelineMode mode = PipelineMode::Lazy;
  std::uint32_t n = 0;
  double eps_target = 0.5;
  std::uint32_t beta = 50;  // engineering preset
  double gap = 0.25;
  std::uint32_t degree_cap = 0;     // 0 = derive (n-1, or the sparsifier cap)
  std::uint32_t batch_override = 0; // testing hook; must be >= the formula batch
  SparsifierConfig sparsifier;      // Full mode only
};

struct UpdateOutcome {
  std::uint32_t gprime_changes = 0;
  std::uint32_t h_changes = 0;
  std::uint32_t path_len_first = 0;
  std::uint32_t path_len_second = 0;
  std::uint64_t ops_sparsifier = 0;
  std::uint64_t ops_edcs = 0;
  std::uint64_t ops_matching = 0;
  std::uint32_t h_size = 0;
  std::uint32_t matching_size = 0;
};

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t len);
inline constexpr std::uint64_t kFnvBasis = 1469598103934665603ull;

// Composes the layers for one run: the input graph G, optionally the
// sparsifier producing G', the EDCS engine over the host graph, and the
// matching layer over H. Each G-update becomes at most three G'-updates plus
// a constant number of restart moves, each handled quiescently by the EDCS.
class Pipeline {
 public:
  explicit Pipeline(PipelineConfig config);

  UpdateOutcome apply(UpdateEvent ev);

  const PipelineConfig& config() const { return config_; }
  const DynamicGraph& graph() const { return g_; }
  /// The graph the EDCS maintains H over: G' in Full mode, otherwise G.
  const DynamicGraph& host() const { return g_prime_ ? *g_prime_ : g_; }
  bool has_sparsifier() const { return sparsifier_.has_value(); }
  const Sparsifier& sparsifier() const { return *sparsifier_; }
  const EdcsEngine& edcs() const { return *edcs_; }
  EdcsEngine& edcs() { return *edcs_; }
  const MatchingLayer& matching() const { return *matching_; }

  std::uint64_t h_digest() const { return h_digest_; }
  std::uint64_t gprime_digest() const { return gprime_digest_; }
  std::uint32_t host_max_degree() const { return host_max_degree_; }
  /// Host-graph events applied by the most recent update.
  const std::vector<UpdateEvent>& last_host_events() const { return last_host_events_; }

 private:
  PipelineConfig config_;
  DynamicGraph g_;
  std::optional<Sparsifier> sparsifier_;
  std::unique_ptr<DynamicGraph> g_prime_;
  std::unique_ptr<EdcsEngine> edcs_;
  std::unique_ptr<MatchingLayer> matching_;
  std::uint64_t h_digest_ = kFnvBasis;
  std::uint64_t gprime_digest_ = kFnvBasis;
  std::uint32_t host_max_degree_ = 0;
  std::vector<UpdateEvent> last_host_events_;

  ChangeSet feed_host_event(UpdateEvent ev, UpdateOutcome& out);
};

}  // namespace dynmatch
