#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "dynmatch/generators.hpp"
#include "dynmatch/pipeline.hpp"
#include "dynmatch/stream.hpp"

namespace dynmatch {

enum class CheckLevel : std::uint8_t { None, Invariants, Oracle };

class CheckFailure : public Error {
 public:
  CheckFailure(std::uint64_t step, std::uint64_t digest, const std::string& what)
      : Error("step " + std::to_string(step) + " (h-digest " + std::to_string(digest) +
              "): " + what),
        step_(step) {}
  std::uint64_t step() const { return step_; }

 private:
  std::uint64_t step_;
};

struct RunConfig {
  PipelineConfig pipeline;
  GeneratorConfig gen;
  bool use_stream = false;
  UpdateStream stream;  // when use_stream

  CheckLevel check = CheckLevel::None;
  std::uint32_t oracle_every = 0;          // 0 = auto: 1 if n <= 16, else 50
  std::uint32_t discrepancy_samples = 1000;
  std::ostream* metrics = nullptr;
};

struct RunSummary {
  std::uint64_t steps = 0;
  std::uint32_t max_h_recourse = 0;
  double avg_h_recourse = 0.0;
  std::uint32_t max_gprime_recourse = 0;
  std::uint32_t max_path_len = 0;
  std::uint64_t max_ops_edcs = 0;
  std::uint64_t max_ops_matching = 0;
  std::uint64_t max_ops_sparsifier = 0;
  std::uint64_t max_ops_total = 0;
  std::uint64_t mu_checks = 0;
  double max_ratio = 0.0;  // mu(G) / |M| extremes over checked steps
  double min_ratio = 0.0;
  std::int64_t max_discrepancy = 0;
  std::uint32_t host_max_degree = 0;
  std::uint32_t final_matching_size = 0;
  std::uint32_t final_h_size = 0;
  std::uint32_t final_edges = 0;
  std::uint64_t h_digest = 0;
  std::uint64_t gprime_digest = 0;
  double wall_seconds = 0.0;

  void print(std::ostream& out) const;
};

/// Drives every event through the configured pipeline, checking and logging
/// per the config. Throws CheckFailure on the first violated invariant.
RunSummary run_stream(const RunConfig& config);

void write_metrics_header(std::ostream& out);

}  // namespace dynmatch
