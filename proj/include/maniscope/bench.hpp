#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "maniscope/metrics.hpp"
#include "maniscope/rerank.hpp"

namespace maniscope::bench {

struct BenchSpec {
  std::size_t pool_size = 100;
  std::size_t dim = 384;
  std::size_t k = 5;
  double alpha = 0.5;
  std::size_t queries = 1000;
  std::size_t warmup = 5;
  std::uint64_t seed = 20240917;
};

/// Stage-1 pools drawn from a synthetic chain corpus: one pool of
/// spec.pool_size candidates per query.
std::vector<CandidatePool> synthetic_pools(const BenchSpec& spec);

struct LatencyResult {
  std::vector<double> samples_ms;
  LatencyStats stats;
};

/// Times rerank() on every pool after spec.warmup untimed calls.
LatencyResult measure_rerank_latency(const std::vector<CandidatePool>& pools,
                                     const BenchSpec& spec);

struct LadderResult {
  double sparse_heap_median_us = 0.0;
  double naive_dense_median_us = 0.0;
  double speedup = 0.0;  // naive / sparse
  bool distances_agree = false;
};

/// Graph construction plus shortest paths from a precomputed similarity
/// matrix: CSR + binary-heap Dijkstra against dense adjacency + array scan.
/// Each pool is timed `repeats` times per path; medians are over all runs.
LadderResult measure_ladder(const std::vector<CandidatePool>& pools, std::size_t k,
                            std::size_t repeats);

/// One-line CPU description from /proc/cpuinfo, or "unknown".
std::string cpu_description();

}  // namespace maniscope::bench
