// Command-line driver: generates or loads an update stream, runs the selected
// pipeline (eager | lazy | full), performs online checking at the configured
// intensity, and writes per-update metrics as CSV plus a key=value summary.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "dynmatch/harness.hpp"

namespace {

bool parse_sparsifier(const std::string& text, dynmatch::SparsifierConfig& out,
                      bool& enabled) {
  if (text == "off") {
    enabled = false;
    return true;
  }
  if (text == "adaptive") {
    enabled = true;
    out.mode = dynmatch::SparsifierMode::AdaptiveM;
    return true;
  }
  if (text.rfind("alpha:", 0) == 0) {
    enabled = true;
    out.mode = dynmatch::SparsifierMode::FixedArboricity;
    out.alpha = std::stod(text.substr(6));
    return true;
  }
  return false;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dynmatch: fully dynamic approximate matching benchmark driver"};

  std::string mode = "lazy";
  double eps = 0.5;
  std::uint32_t beta = 50;
  double gap = 0.25;
  std::string sparsifier = "";
  std::string gen = "uniform";
  std::uint32_t n = 100;
  std::uint64_t steps = 1000;
  std::uint64_t seed = 1;
  std::uint32_t window = 0;
  std::uint32_t outdeg = 1;
  std::string stream_path;
  std::string check = "none";
  std::uint32_t oracle_every = 0;
  std::string metrics_path;
  std::uint32_t steps_per_update = 8;
  std::string dump_stream;

  app.add_option("--mode", mode, "Pipeline mode: eager|lazy|full")
      ->check(CLI::IsMember({"eager", "lazy", "full"}));
  app.add_option("--eps", eps, "Target approximation parameter");
  app.add_option("--beta", beta, "EDCS beta preset");
  app.add_option("--gap", gap, "EDCS gap parameter (the per-layer eps')");
  app.add_option("--sparsifier", sparsifier, "off | alpha:<k> | adaptive");
  app.add_option("--gen", gen,
                 "Generator: uniform|sliding-window|bounded-outdegree|star-adversary");
  app.add_option("--n", n, "Vertex count for generated streams");
  app.add_option("--steps", steps, "Number of generated update events");
  app.add_option("--seed", seed, "Generator seed");
  app.add_option("--window", window, "Window for sliding-window/star-adversary");
  app.add_option("--outdeg", outdeg, "Out-degree cap for bounded-outdegree");
  app.add_option("--stream", stream_path, "Load the update stream from a file");
  app.add_option("--check", check, "Checking level: none|invariants|oracle")
      ->check(CLI::IsMember({"none", "invariants", "oracle"}));
  app.add_option("--oracle-every", oracle_every,
                 "Oracle cadence in steps (0 = auto: 1 if n<=16 else 50)");
  app.add_option("--metrics", metrics_path, "Write per-update metrics CSV here");
  app.add_option("--steps-per-update", steps_per_update,
                 "Gradual-restart budget c (adaptive sparsifier)");
  app.add_option("--dump-stream", dump_stream,
                 "Write the generated stream to a file and exit");

  CLI11_PARSE(app, argc, argv);

  try {
    dynmatch::RunConfig config;
    config.pipeline.eps_target = eps;
    config.pipeline.beta = beta;
    config.pipeline.gap = gap;
    config.pipeline.sparsifier.eps = eps;
    config.pipeline.sparsifier.steps_per_update = steps_per_update;

    bool spars_enabled = false;
    if (!sparsifier.empty() &&
        !parse_sparsifier(sparsifier, config.pipeline.sparsifier, spars_enabled)) {
      std::cerr << "bad --sparsifier value: " << sparsifier << "\n";
      return 2;
    }

    if (mode == "eager") {
      config.pipeline.mode = dynmatch::PipelineMode::Eager;
    } else if (mode == "lazy") {
      config.pipeline.mode = dynmatch::PipelineMode::Lazy;
    } else {
      config.pipeline.mode = dynmatch::PipelineMode::Full;
      if (sparsifier.empty()) {
        spars_enabled = true;
        config.pipeline.sparsifier.mode = dynmatch::SparsifierMode::AdaptiveM;
      }
    }
    if (config.pipeline.mode == dynmatch::PipelineMode::Full && !spars_enabled) {
      std::cerr << "--mode full needs --sparsifier alpha:<k> or adaptive\n";
      return 2;
    }
    if (config.pipeline.mode != dynmatch::PipelineMode::Full && spars_enabled) {
      std::cerr << "--sparsifier requires --mode full\n";
      return 2;
    }

    if (!stream_path.empty()) {
      config.use_stream = true;
      config.stream = dynmatch::load_stream_file(stream_path);
      config.pipeline.n = config.stream.vertex_count;
    } else {
      config.gen.kind = dynmatch::parse_generator_kind(gen);
      config.gen.n = n;
      config.gen.steps = steps;
      config.gen.seed = seed;
      config.gen.window = window;
      config.gen.outdeg = outdeg;
      config.pipeline.n = n;
    }

    if (!dump_stream.empty()) {
      const dynmatch::UpdateStream s = config.use_stream
                                           ? config.stream
                                           : dynmatch::generate_stream(config.gen);
      std::ofstream out(dump_stream);
      if (!out) {
        std::cerr << "cannot open " << dump_stream << "\n";
        return 2;
      }
      dynmatch::write_stream(out, s);
      std::cout << "wrote " << s.events.size() << " events to " << dump_stream << "\n";
      return 0;
    }

    if (check == "invariants") {
      config.check = dynmatch::CheckLevel::Invariants;
    } else if (check == "oracle") {
      config.check = dynmatch::CheckLevel::Oracle;
    }
    config.oracle_every = oracle_every;

    std::ofstream metrics_file;
    if (!metrics_path.empty()) {
      metrics_file.open(metrics_path);
      if (!metrics_file) {
        std::cerr << "cannot open " << metrics_path << "\n";
        return 2;
      }
      config.metrics = &metrics_file;
    }

    const dynmatch::RunSummary summary = dynmatch::run_stream(config);
    summary.print(std::cout);
    return 0;
  } catch (const dynmatch::CheckFailure& f) {
    std::cerr << "check failed at " << f.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
