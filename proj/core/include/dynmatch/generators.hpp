#pragma once

#include <cstdint>
#include <string>

#include "dynmatch/stream.hpp"
#include "dynmatch/types.hpp"

namespace dynmatch {

enum class GeneratorKind : std::uint8_t {
  Uniform,          // flip a uniformly random vertex pair each step
  SlidingWindow,    // live set is always the last <= window insertions
  BoundedOutdegree, // orientation with out-degree <= k, so arboricity <= k+1
  StarAdversary,    // churn a star around vertex 0 with a sliding window
};

GeneratorKind parse_generator_kind(const std::string& name);
std::string generator_kind_name(GeneratorKind kind);

struct GeneratorConfig {
  GeneratorKind kind = GeneratorKind::Uniform;
  std::uint32_t n = 0;
  std::uint64_t steps = 0;
  std::uint64_t seed = 1;
  std::uint32_t window = 0;  // SlidingWindow / StarAdversary; 0 = default
  std::uint32_t outdeg = 1;  // BoundedOutdegree
};

/// Deterministic under (kind, n, steps, seed, params).
UpdateStream generate_stream(const GeneratorConfig& config);

}  // namespace dynmatch
