#include <benchmark/benchmark.h>

#include "dynmatch/generators.hpp"
#include "dynmatch/oracle.hpp"
#include "dynmatch/pipeline.hpp"

namespace {

using namespace dynmatch;

UpdateStream make_stream(GeneratorKind kind, std::uint32_t n, std::uint64_t steps,
                         std::uint32_t window = 0) {
  GeneratorConfig gen;
  gen.kind = kind;
  gen.n = n;
  gen.steps = steps;
  gen.seed = 99;
  gen.window = window;
  return generate_stream(gen);
}

void run_updates(benchmark::State& state, PipelineConfig config,
                 const UpdateStream& stream) {
  for (auto _ : state) {
    state.PauseTiming();
    Pipeline pipeline(config);
    state.ResumeTiming();
    for (const UpdateEvent& ev : stream.events) {
      benchmark::DoNotOptimize(pipeline.apply(ev));
    }
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                          static_cast<std::int64_t>(stream.events.size()));
}

void BM_EagerUpdates(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const UpdateStream stream = make_stream(GeneratorKind::Uniform, n, 20000);
  PipelineConfig config;
  config.mode = PipelineMode::Eager;
  config.n = n;
  config.beta = 50;
  config.gap = 0.25;
  run_updates(state, config, stream);
}
BENCHMARK(BM_EagerUpdates)->Arg(100)->Arg(400);

void BM_LazyUpdates(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const UpdateStream stream = make_stream(GeneratorKind::Uniform, n, 20000);
  PipelineConfig config;
  config.mode = PipelineMode::Lazy;
  config.n = n;
  config.beta = 50;
  config.gap = 0.25;
  run_updates(state, config, stream);
}
BENCHMARK(BM_LazyUpdates)->Arg(100)->Arg(400);

void BM_FullPipelineStar(benchmark::State& state) {
  const auto alpha = static_cast<double>(state.range(0));
  const std::uint32_t n = 1200;
  PipelineConfig config;
  config.mode = PipelineMode::Full;
  config.n = n;
  config.beta = 84;
  config.gap = 0.25;
  config.sparsifier.mode = SparsifierMode::FixedArboricity;
  config.sparsifier.alpha = alpha;
  config.sparsifier.eps = 0.5;
  const UpdateStream stream =
      make_stream(GeneratorKind::StarAdversary, n, 20000, /*window=*/900);
  run_updates(state, config, stream);
}
BENCHMARK(BM_FullPipelineStar)->Arg(1)->Arg(4);

void BM_Blossom(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const UpdateStream stream = make_stream(GeneratorKind::Uniform, n, 6 * n);
  std::vector<Edge> edges;
  std::unordered_map<std::uint64_t, std::size_t> pos;
  for (const UpdateEvent& ev : stream.events) {
    if (ev.kind == UpdateKind::Insert) {
      pos[edge_key(ev.edge)] = edges.size();
      edges.push_back(ev.edge);
    }
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle::max_matching_blossom_size(n, edges));
  }
}
BENCHMARK(BM_Blossom)->Arg(200)->Arg(800);

}  // namespace

BENCHMARK_MAIN();
