// maniscope command-line driver: evaluation, parameter sweeps, synthetic
// data generation, the HTTP rerank service and the latency benchmark.

#include <csignal>
#include <cstdlib>
#include <iostream>
#include <pthread.h>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "maniscope/bench.hpp"
#include "maniscope/error.hpp"
#include "maniscope/harness.hpp"
#include "maniscope/report.hpp"
#include "maniscope/service.hpp"
#include "maniscope/synthgen.hpp"

namespace {

#ifdef NDEBUG
constexpr bool kOptimisedBuild = true;
#else
constexpr bool kOptimisedBuild = false;
#endif

#if defined(__clang__)
constexpr const char* kCompiler = "clang " __clang_version__;
#elif defined(__GNUC__)
constexpr const char* kCompiler = "gcc " __VERSION__;
#else
constexpr const char* kCompiler = "unknown compiler";
#endif

using namespace maniscope;

struct EvalArgs {
  std::string dataset;
  std::vector<std::string> rerankers{"maniscope", "cosine"};
  std::size_t top_m = 100;
  std::size_t k = 5;
  double alpha = 0.5;
  std::string variant = "maxnorm";
  std::string format = "json";
  std::string output = "-";
  std::uint64_t seed = 0;
  std::size_t warmup = 5;
  bool mask_latency = false;
  std::vector<std::size_t> k_grid;
  std::vector<double> alpha_grid;
};

void add_eval_options(CLI::App* cmd, EvalArgs& a) {
  cmd->add_option("--dataset", a.dataset, "Dataset directory")->required();
  cmd->add_option("--reranker", a.rerankers, "Rerankers: maniscope, cosine")
      ->delimiter(',')
      ->capture_default_str();
  cmd->add_option("--top-m", a.top_m, "Stage-1 candidate pool size")->required();
  cmd->add_option("--k", a.k, "Neighbors per node in the k-NN graph")->capture_default_str();
  cmd->add_option("--alpha", a.alpha, "Weight of cosine in the hybrid score")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--variant", a.variant, "Geodesic similarity: maxnorm or inverse")
      ->capture_default_str();
  cmd->add_option("--format", a.format, "Report format: json, csv, markdown")
      ->capture_default_str();
  cmd->add_option("--output", a.output, "Report path, '-' for stdout")->capture_default_str();
  cmd->add_option("--seed", a.seed, "Seed recorded in the report")->capture_default_str();
  cmd->add_option("--warmup", a.warmup, "Untimed warmup reranks")->capture_default_str();
  cmd->add_flag("--mask-latency", a.mask_latency, "Replace latency fields with null");
}

RunConfig to_run_config(const EvalArgs& a) {
  RunConfig cfg;
  cfg.dataset_dir = a.dataset;
  cfg.rerankers.clear();
  for (const auto& name : a.rerankers) cfg.rerankers.push_back(parse_reranker(name));
  cfg.top_m = a.top_m;
  cfg.k = a.k;
  cfg.alpha = a.alpha;
  cfg.variant = parse_geodesic_variant(a.variant);
  cfg.format = parse_report_format(a.format);
  cfg.output = a.output;
  cfg.seed = a.seed;
  cfg.warmup_queries = a.warmup;
  for (const auto& w : cfg.validate()) std::cerr << "warning: " << w << '\n';
  return cfg;
}

int run_serve(const service::ServerOptions& options) {
  // Signals are consumed by a dedicated thread so the server can be stopped
  // outside of signal-handler context.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  service::Server server(options);
  const int port = server.bind();
  std::cerr << "maniscope " << service::version() << " listening on " << options.host << ':'
            << port << '\n';
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    std::cerr << "maniscope: shutting down\n";
    server.stop();
  });
  server.serve();
  waiter.join();
  return 0;
}

std::string bench_report(const bench::BenchSpec& spec, const bench::LatencyResult& lat,
                         const bench::LadderResult& ladder) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(4);
  out << "# Rerank latency benchmark\n\n"
      << "- CPU: " << bench::cpu_description() << "\n"
      << "- maniscope " << service::version() << "\n"
      << "- compiler: " << kCompiler << (kOptimisedBuild ? ", optimised build" : ", debug build") << "\n"
      << "- pool size M=" << spec.pool_size << ", dim D=" << spec.dim << ", k=" << spec.k
      << ", alpha=" << spec.alpha << "\n"
      << "- queries: " << spec.queries << " timed after " << spec.warmup << " warmups\n\n"
      << "| statistic | ms |\n|---|---:|\n"
      << "| mean | " << lat.stats.mean << " |\n"
      << "| p50 | " << lat.stats.p50 << " |\n"
      << "| p95 | " << lat.stats.p95 << " |\n\n"
      << "## Graph + shortest path, from a precomputed similarity matrix\n\n"
      << "| implementation | median us |\n|---|---:|\n"
      << "| dense adjacency + array-scan Dijkstra | " << ladder.naive_dense_median_us << " |\n"
      << "| CSR + binary-heap Dijkstra | " << ladder.sparse_heap_median_us << " |\n\n"
      << "speedup: " << ladder.speedup << "x; distances agree: "
      << (ladder.distances_agree ? "yes" : "no") << "\n";
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"maniscope: geodesic reranking over k-NN candidate graphs"};
  app.set_version_flag("--version", std::string(service::version()));
  app.require_subcommand(1);

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate rerankers on a dataset");
  add_eval_options(eval_cmd, eval_args);

  EvalArgs sweep_args;
  auto* sweep_cmd = app.add_subcommand("sweep", "Evaluate a grid of k and alpha values");
  add_eval_options(sweep_cmd, sweep_args);
  sweep_cmd->add_option("--k-grid", sweep_args.k_grid, "Comma-separated k values")
      ->delimiter(',')
      ->required();
  sweep_cmd->add_option("--alpha-grid", sweep_args.alpha_grid, "Comma-separated alpha values")
      ->delimiter(',')
      ->required();

  SynthSpec synth;
  std::string synth_out;
  auto* gen_cmd = app.add_subcommand("generate", "Write a synthetic chain-cluster dataset");
  gen_cmd->add_option("--out", synth_out, "Output directory")->required();
  gen_cmd->add_option("--clusters", synth.clusters)->capture_default_str();
  gen_cmd->add_option("--per-cluster", synth.per_cluster)->capture_default_str();
  gen_cmd->add_option("--dim", synth.dim)->capture_default_str();
  gen_cmd->add_option("--chain-step", synth.chain_step)->capture_default_str();
  gen_cmd->add_option("--noise-sigma", synth.noise_sigma)->capture_default_str();
  gen_cmd->add_option("--separation", synth.separation)->capture_default_str();
  gen_cmd->add_option("--queries-per-cluster", synth.queries_per_cluster)->capture_default_str();
  gen_cmd->add_option("--seed", synth.seed)->capture_default_str();

  service::ServerOptions server_opts;
  if (const char* env = std::getenv("MANISCOPE_HOST")) server_opts.host = env;
  if (const char* env = std::getenv("MANISCOPE_PORT")) server_opts.port = std::atoi(env);
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP rerank service");
  serve_cmd->add_option("--host", server_opts.host, "Bind address (env MANISCOPE_HOST)")
      ->capture_default_str();
  serve_cmd->add_option("--port", server_opts.port, "Port, 0 for any (env MANISCOPE_PORT)")
      ->capture_default_str();
  serve_cmd->add_option("--max-body-bytes", server_opts.max_body_bytes, "Request size limit")
      ->capture_default_str();

  bench::BenchSpec bench_spec;
  std::size_t ladder_pools = 200;
  std::string bench_out = "-";
  auto* bench_cmd = app.add_subcommand("bench", "Measure rerank latency on synthetic pools");
  bench_cmd->add_option("--m", bench_spec.pool_size)->capture_default_str();
  bench_cmd->add_option("--dim", bench_spec.dim)->capture_default_str();
  bench_cmd->add_option("--k", bench_spec.k)->capture_default_str();
  bench_cmd->add_option("--alpha", bench_spec.alpha)->capture_default_str();
  bench_cmd->add_option("--queries", bench_spec.queries)->capture_default_str();
  bench_cmd->add_option("--warmup", bench_spec.warmup)->capture_default_str();
  bench_cmd->add_option("--seed", bench_spec.seed)->capture_default_str();
  bench_cmd->add_option("--ladder-pools", ladder_pools)->capture_default_str();
  bench_cmd->add_option("--output", bench_out, "Markdown report path")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*eval_cmd) {
      const auto cfg = to_run_config(eval_args);
      const auto reports = run_eval(cfg);
      emit_report(reports, cfg.format, cfg.output, {eval_args.mask_latency});
    } else if (*sweep_cmd) {
      const auto cfg = to_run_config(sweep_args);
      const auto cells = sweep(cfg, sweep_args.k_grid, sweep_args.alpha_grid);
      write_text(render_sweep(cells, cfg.format, {sweep_args.mask_latency}), cfg.output);
    } else if (*gen_cmd) {
      write_dataset(generate(synth), synth_out);
    } else if (*serve_cmd) {
      return run_serve(server_opts);
    } else if (*bench_cmd) {
      const auto pools = bench::synthetic_pools(bench_spec);
      const auto lat = bench::measure_rerank_latency(pools, bench_spec);
      const std::vector<CandidatePool> subset(
          pools.begin(), pools.begin() + static_cast<std::ptrdiff_t>(std::min(ladder_pools, pools.size())));
      const auto ladder = bench::measure_ladder(subset, bench_spec.k, 5);
      write_text(bench_report(bench_spec, lat, ladder), bench_out);
    }
  } catch (const maniscope::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
