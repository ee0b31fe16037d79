#include "dynmatch/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>

#include "dynmatch/oracle.hpp"

namespace dynmatch {

void write_metrics_header(std::ostream& out) {
  out << "step,event,u,v,gprime_recourse,h_recourse,path_len_a,path_len_b,"
         "ops_sparsifier,ops_edcs,ops_matching,h_size,matching_size,mu_g,"
         "discrepancy\n";
}

namespace {

struct Checker {
  const RunConfig& config;
  const Pipeline& pipeline;
  RunSummary& summary;
  std::uint32_t oracle_every;
  std::uint64_t discrepancy_every;
  double recourse_cap_h;
  std::uint32_t recourse_cap_gprime;
  double path_cap;
  std::vector<std::uint32_t> dh_buf;

  Checker(const RunConfig& cfg, const Pipeline& p, RunSummary& s, std::uint64_t steps)
      : config(cfg), pipeline(p), summary(s), dh_buf(cfg.pipeline.n, 0) {
    oracle_every = cfg.oracle_every;
    if (oracle_every == 0) oracle_every = (cfg.pipeline.n <= 16) ? 1 : 50;
    discrepancy_every =
        std::max<std::uint64_t>(1, steps / std::max<std::uint32_t>(1, cfg.discrepancy_samples));
    const double gap = cfg.pipeline.gap;
    const bool eager = cfg.pipeline.mode == PipelineMode::Eager;
    path_cap = eager ? 2.0 / gap : 5.0 / (2.0 * gap);
    recourse_cap_h = eager ? 4.0 / gap : 5.0 / gap;
    recourse_cap_gprime = 3 + (cfg.pipeline.sparsifier.steps_per_update - 1);
  }

  void fail(std::uint64_t step, const std::string& what) const {
    throw CheckFailure(step, pipeline.h_digest(), what);
  }

  // O(1) per-update counter checks.
  void check_counters(std::uint64_t step, const UpdateOutcome& out) const {
    if (out.path_len_first > path_cap || out.path_len_second > path_cap) {
      fail(step, "alternating path length " +
                     std::to_string(std::max(out.path_len_first, out.path_len_second)) +
                     " exceeds bound " + std::to_string(path_cap));
    }
    if (out.h_changes > recourse_cap_h) {
      fail(step, "H recourse " + std::to_string(out.h_changes) + " exceeds bound " +
                     std::to_string(recourse_cap_h));
    }
    if (pipeline.has_sparsifier() && out.gprime_changes > recourse_cap_gprime) {
      fail(step, "G' recourse " + std::to_string(out.gprime_changes) + " exceeds bound " +
                     std::to_string(recourse_cap_gprime));
    }
  }

  void edcs_bounds(double& hi, double& lo) const {
    const EdcsParams& p = pipeline.edcs().params();
    if (config.pipeline.mode == PipelineMode::Eager) {
      hi = p.beta;
      lo = p.low_threshold;
    } else {
      hi = p.gamma();
      lo = p.gamma_minus();
    }
  }

  // Allocation-free (P1)/(P2) scan: recompute H-degrees from the engine's
  // membership bits and validate every live weight.
  void check_structure(std::uint64_t step) {
    const EdcsEngine& edcs = pipeline.edcs();
    const DynamicGraph& host = pipeline.host();
    double hi, lo;
    edcs_bounds(hi, lo);
    host.for_each_edge([&](EdgeId id, Edge e) {
      if (edcs.in_h(id)) {
        dh_buf[e.u] += 1;
        dh_buf[e.v] += 1;
      }
    });
    bool bad = false;
    host.for_each_edge([&](EdgeId id, Edge e) {
      const double w = dh_buf[e.u] + dh_buf[e.v];
      if (edcs.in_h(id) ? (w > hi) : (w < lo)) bad = true;
    });
    host.for_each_edge([&](EdgeId, Edge e) {
      dh_buf[e.u] = 0;
      dh_buf[e.v] = 0;
    });
    if (bad) fail(step, "EDCS (P1)/(P2) violation in the per-step scan");

    // Cross-validate the fast path against the reference scan now and then.
    if (step % 50 == 0) {
      const oracle::EdcsReport report = oracle::verify_edcs(
          config.pipeline.n, host.edges(), edcs.h_edges(), hi, lo);
      if (!report.ok()) {
        fail(step, "EDCS violation: " + std::to_string(report.violations_p1.size()) +
                       " P1, " + std::to_string(report.violations_p2.size()) + " P2");
      }
    }

    if (pipeline.has_sparsifier()) {
      const std::uint32_t cap = pipeline.sparsifier().degree_cap();
      for (const UpdateEvent& ev : pipeline.last_host_events()) {
        if (host.degree(ev.edge.u) > cap || host.degree(ev.edge.v) > cap) {
          fail(step, "G' degree exceeds cap " + std::to_string(cap));
        }
      }
    }
  }

  void check_discrepancy(std::uint64_t step) {
    const auto rep = pipeline.edcs().check_discrepancy();
    summary.max_discrepancy = std::max(summary.max_discrepancy, rep.max_abs());
    const double band = config.pipeline.gap * config.pipeline.beta / 10.0;
    if (static_cast<double>(rep.max_abs()) > band) {
      fail(step, "discrepancy " + std::to_string(rep.max_abs()) + " exceeds band " +
                     std::to_string(band));
    }
  }

  std::uint32_t mu_of(const std::vector<Edge>& edges) const {
    if (edges.size() <= oracle::kBruteForceEdgeCap) {
      return oracle::max_matching_bruteforce(config.pipeline.n, edges);
    }
    return oracle::max_matching_blossom_size(config.pipeline.n, edges);
  }

  // Oracle-backed approximation checks; returns mu(G) for the metrics row.
  std::uint32_t check_oracle(std::uint64_t step) {
    const std::vector<Edge> g_edges = pipeline.graph().edges();
    const std::uint32_t mu = mu_of(g_edges);
    ++summary.mu_checks;
    const std::uint32_t served = pipeline.matching().size();
    if (mu > 0) {
      if (served == 0) {
        fail(step, "oracle matching nonzero but served matching empty");
      }
      const double ratio = static_cast<double>(mu) / served;
      if (summary.mu_checks == 1) {
        summary.max_ratio = summary.min_ratio = ratio;
      } else {
        summary.max_ratio = std::max(summary.max_ratio, ratio);
        summary.min_ratio = std::min(summary.min_ratio, ratio);
      }
      const double cap = 1.5 + config.pipeline.eps_target;
      if (ratio > cap + 1e-9) {
        fail(step, "approximation ratio " + std::to_string(ratio) + " exceeds " +
                       std::to_string(cap));
      }
    }
    if (pipeline.has_sparsifier()) {
      const std::uint32_t mu_prime = mu_of(pipeline.host().edges());
      if (static_cast<double>(mu) >
          (1.0 + config.pipeline.sparsifier.eps) * mu_prime + 1e-9) {
        fail(step, "sparsifier ratio violated: mu(G)=" + std::to_string(mu) +
                       " mu(G')=" + std::to_string(mu_prime));
      }
    }
    return mu;
  }
};

}  // namespace

RunSummary run_stream(const RunConfig& config) {
  const UpdateStream stream =
      config.use_stream ? config.stream : generate_stream(config.gen);

  RunSummary summary;
  Pipeline pipeline(config.pipeline);
  Checker checker(config, pipeline, summary, stream.events.size());
  if (config.metrics) write_metrics_header(*config.metrics);

  const auto t0 = std::chrono::steady_clock::now();
  std::uint64_t total_h_changes = 0;
  std::uint64_t step = 0;
  for (const UpdateEvent& ev : stream.events) {
    ++step;
    const UpdateOutcome out = pipeline.apply(ev);

    total_h_changes += out.h_changes;
    summary.max_h_recourse = std::max(summary.max_h_recourse, out.h_changes);
    summary.max_gprime_recourse =
        std::max(summary.max_gprime_recourse, out.gprime_changes);
    summary.max_path_len = std::max(
        {summary.max_path_len, out.path_len_first, out.path_len_second});
    summary.max_ops_edcs = std::max(summary.max_ops_edcs, out.ops_edcs);
    summary.max_ops_matching = std::max(summary.max_ops_matching, out.ops_matching);
    summary.max_ops_sparsifier = std::max(summary.max_ops_sparsifier, out.ops_sparsifier);
    summary.max_ops_total = std::max(
        summary.max_ops_total, out.ops_edcs + out.ops_matching + out.ops_sparsifier);

    bool have_mu = false;
    std::uint32_t mu = 0;
    bool have_dis = false;
    std::int64_t dis = 0;
    if (config.check != CheckLevel::None) {
      checker.check_counters(step, out);
      checker.check_structure(step);
      if (step % checker.discrepancy_every == 0 &&
          config.pipeline.mode != PipelineMode::Eager) {
        checker.check_discrepancy(step);
        have_dis = true;
        dis = pipeline.edcs().check_discrepancy().max_abs();
      }
      if (config.check == CheckLevel::Oracle && step % checker.oracle_every == 0) {
        mu = checker.check_oracle(step);
        have_mu = true;
      }
    }

    if (config.metrics) {
      std::ostream& m = *config.metrics;
      m << step << ',' << (ev.kind == UpdateKind::Insert ? '+' : '-') << ','
        << ev.edge.u << ',' << ev.edge.v << ',' << out.gprime_changes << ','
        << out.h_changes << ',' << out.path_len_first << ',' << out.path_len_second
        << ',' << out.ops_sparsifier << ',' << out.ops_edcs << ',' << out.ops_matching
        << ',' << out.h_size << ',' << out.matching_size << ',';
      if (have_mu) m << mu;
      m << ',';
      if (have_dis) m << dis;
      m << '\n';
    }
  }
  const auto t1 = std::chrono::steady_clock::now();

  summary.steps = stream.events.size();
  summary.avg_h_recourse =
      summary.steps ? static_cast<double>(total_h_changes) / summary.steps : 0.0;
  summary.host_max_degree = pipeline.host_max_degree();
  summary.final_matching_size = pipeline.matching().size();
  summary.final_h_size = pipeline.edcs().h_size();
  summary.final_edges = pipeline.graph().num_edges();
  summary.h_digest = pipeline.h_digest();
  summary.gprime_digest = pipeline.gprime_digest();
  summary.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
  return summary;
}

void RunSummary::print(std::ostream& out) const {
  out << "steps=" << steps << "\n"
      << "max_h_recourse=" << max_h_recourse << "\n"
      << "avg_h_recourse=" << avg_h_recourse << "\n"
      << "max_gprime_recourse=" << max_gprime_recourse << "\n"
      << "max_path_len=" << max_path_len << "\n"
      << "max_ops_edcs=" << max_ops_edcs << "\n"
      << "max_ops_matching=" << max_ops_matching << "\n"
      << "max_ops_sparsifier=" << max_ops_sparsifier << "\n"
      << "max_ops_total=" << max_ops_total << "\n"
      << "mu_checks=" << mu_checks << "\n"
      << "max_ratio=" << max_ratio << "\n"
      << "min_ratio=" << min_ratio << "\n"
      << "max_discrepancy=" << max_discrepancy << "\n"
      << "host_max_degree=" << host_max_degree << "\n"
      << "final_matching_size=" << final_matching_size << "\n"
      << "final_h_size=" << final_h_size << "\n"
      << "final_edges=" << final_edges << "\n"
      << "h_digest=" << h_digest << "\n"
      << "gprime_digest=" << gprime_digest << "\n"
      << "wall_seconds=" << wall_seconds << "\n";
}

}  // namespace dynmatch
