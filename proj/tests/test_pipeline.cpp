#include <sstream>

#include "doctest.h"
#include "dynmatch/harness.hpp"

using namespace dynmatch;

namespace {

RunConfig small_run(PipelineMode mode) {
  RunConfig c;
  c.pipeline.mode = mode;
  c.pipeline.n = 40;
  c.pipeline.beta = 20;
  c.pipeline.gap = 0.25;
  c.pipeline.eps_target = 0.5;
  c.gen.kind = GeneratorKind::Uniform;
  c.gen.n = 40;
  c.gen.steps = 2500;
  c.gen.seed = 77;
  return c;
}

}  // namespace

TEST_CASE("identical config and seed give byte-identical metrics") {
  RunConfig c = small_run(PipelineMode::Lazy);
  c.check = CheckLevel::Invariants;

  std::ostringstream a, b;
  c.metrics = &a;
  const RunSummary sa = run_stream(c);
  c.metrics = &b;
  const RunSummary sb = run_stream(c);

  CHECK(a.str() == b.str());
  CHECK(sa.h_digest == sb.h_digest);
  CHECK(sa.max_ops_total == sb.max_ops_total);
  CHECK(a.str().substr(0, a.str().find('\n')) ==
        "step,event,u,v,gprime_recourse,h_recourse,path_len_a,path_len_b,"
        "ops_sparsifier,ops_edcs,ops_matching,h_size,matching_size,mu_g,"
        "discrepancy");
  // one header plus one row per event
  std::size_t rows = 0;
  for (char ch : a.str()) rows += ch == '\n';
  CHECK(rows == 2501);
}

TEST_CASE("eager and lazy-with-covering-batch produce identical H streams") {
  RunConfig eager = small_run(PipelineMode::Eager);
  const RunSummary se = run_stream(eager);

  RunConfig lazy = small_run(PipelineMode::Lazy);
  lazy.pipeline.batch_override = 40;  // >= any degree
  const RunSummary sl = run_stream(lazy);

  CHECK(se.h_digest == sl.h_digest);
  CHECK(se.final_h_size == sl.final_h_size);
  CHECK(se.final_matching_size == sl.final_matching_size);
}

TEST_CASE("full mode materializes G' as the double-marked subgraph") {
  RunConfig c = small_run(PipelineMode::Full);
  c.pipeline.sparsifier.mode = SparsifierMode::FixedArboricity;
  c.pipeline.sparsifier.alpha = 1.0;
  c.pipeline.sparsifier.eps = 0.5;
  c.pipeline.sparsifier.eta_formula_scale = 2.0 / 110.0;  // eta = 2, binds hard
  c.check = CheckLevel::None;

  const UpdateStream stream = generate_stream(c.gen);
  Pipeline p(c.pipeline);
  for (const UpdateEvent& ev : stream.events) p.apply(ev);

  REQUIRE(p.has_sparsifier());
  CHECK(p.sparsifier().eta() == 2);
  CHECK(&p.host() != &p.graph());
  CHECK(p.host().num_edges() <= p.graph().num_edges());
  p.graph().for_each_edge([&](EdgeId id, Edge e) {
    CHECK(p.host().has_edge(e) == p.sparsifier().in_g_prime(id));
  });
  for (VertexId v = 0; v < 40; ++v) {
    CHECK(p.host().degree(v) <= 2);
  }
}

TEST_CASE("violated invariants abort the run with a diagnostic") {
  // A batch override of 1 starves the notifications, so the discrepancy
  // check must eventually trip on a churning star.
  RunConfig c;
  c.pipeline.mode = PipelineMode::Lazy;
  c.pipeline.n = 40;
  c.pipeline.beta = 40;
  c.pipeline.gap = 0.45;
  c.pipeline.batch_override = 1;
  c.gen.kind = GeneratorKind::StarAdversary;
  c.gen.n = 40;
  c.gen.steps = 4000;
  c.gen.window = 30;
  c.check = CheckLevel::Invariants;
  c.discrepancy_samples = 4000;  // check every step

  CHECK_THROWS_AS(run_stream(c), CheckFailure);
}

TEST_CASE("oracle-level checking passes on a healthy lazy run") {
  RunConfig c = small_run(PipelineMode::Lazy);
  c.gen.steps = 1200;
  c.check = CheckLevel::Oracle;
  c.oracle_every = 10;
  const RunSummary s = run_stream(c);
  CHECK(s.mu_checks == 120);
  CHECK(s.max_ratio <= 2.0);
  CHECK(s.min_ratio >= 1.0);
}
