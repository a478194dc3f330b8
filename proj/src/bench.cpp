#include "maniscope/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <thread>

#include "maniscope/knn_graph.hpp"
#include "maniscope/reference.hpp"
#include "maniscope/synthgen.hpp"
#include "maniscope/telescope.hpp"

namespace maniscope::bench {
namespace {

using Clock = std::chrono::steady_clock;

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

bool same_distances(const GeodesicDistances& a, const GeodesicDistances& b) {
  for (std::size_t i = 0; i < a.dist.size(); ++i) {
    if (a.reachable(i) != b.reachable(i)) return false;
    if (a.reachable(i) && std::abs(a.dist[i] - b.dist[i]) > 1e-9) return false;
  }
  return true;
}

}  // namespace

std::vector<CandidatePool> synthetic_pools(const BenchSpec& spec) {
  SynthSpec synth;
  synth.clusters = 4;
  synth.per_cluster = std::max<std::size_t>(spec.pool_size, 64);
  synth.dim = spec.dim;
  synth.chain_step = 0.05;
  synth.noise_sigma = 0.3;
  synth.seed = spec.seed;
  synth.queries_per_cluster = (spec.queries + synth.clusters - 1) / synth.clusters;
  const auto ds = generate(synth);

  std::vector<CandidatePool> pools;
  pools.reserve(spec.queries);
  for (std::size_t q = 0; q < spec.queries; ++q) {
    pools.push_back(retrieve_top_m(ds.queries[q], ds.corpus, spec.pool_size));
  }
  return pools;
}

LatencyResult measure_rerank_latency(const std::vector<CandidatePool>& pools,
                                     const BenchSpec& spec) {
  const RerankConfig cfg{spec.k, spec.alpha, GeodesicVariant::kMaxNorm};
  for (std::size_t w = 0; w < spec.warmup; ++w) (void)rerank(pools[w % pools.size()], cfg);
  LatencyResult out;
  out.samples_ms.reserve(pools.size());
  for (const auto& pool : pools) out.samples_ms.push_back(rerank(pool, cfg).latency_ms);
  out.stats = latency_stats(out.samples_ms);
  return out;
}

LadderResult measure_ladder(const std::vector<CandidatePool>& pools, std::size_t k,
                            std::size_t repeats) {
  std::vector<SimilarityMatrix> sims;
  sims.reserve(pools.size());
  for (const auto& pool : pools) sims.push_back(pairwise_similarities(pool));

  LadderResult out;
  out.distances_agree = true;
  std::vector<double> sparse_us;
  std::vector<double> naive_us;
  auto time_us = [](auto&& fn) {
    const auto start = Clock::now();
    auto result = fn();
    const double us = std::chrono::duration<double, std::micro>(Clock::now() - start).count();
    return std::pair{us, std::move(result)};
  };
  for (std::size_t rep = 0; rep < repeats; ++rep) {
    for (const auto& s : sims) {
      auto [t_sparse, fast] = time_us([&] { return dijkstra_from_anchor(build_knn_graph(s, k), 0); });
      auto [t_naive, slow] = time_us([&] { return reference::naive_dense_dijkstra(s, k, 0); });
      sparse_us.push_back(t_sparse);
      naive_us.push_back(t_naive);
      out.distances_agree = out.distances_agree && same_distances(fast, slow);
    }
  }
  out.sparse_heap_median_us = median(sparse_us);
  out.naive_dense_median_us = median(naive_us);
  out.speedup = out.naive_dense_median_us / out.sparse_heap_median_us;
  return out;
}

std::string cpu_description() {
  std::ifstream in("/proc/cpuinfo");
  std::string line;
  std::string model = "unknown";
  while (std::getline(in, line)) {
    if (line.rfind("model name", 0) == 0) {
      const auto colon = line.find(':');
      if (colon != std::string::npos) model = line.substr(colon + 2);
      break;
    }
  }
  return model + " (" + std::to_string(std::thread::hardware_concurrency()) + " logical CPUs)";
}

}  // namespace maniscope::bench
