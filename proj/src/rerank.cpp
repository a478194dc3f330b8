#include "maniscope/rerank.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <string>

#include "maniscope/error.hpp"
#include "maniscope/knn_graph.hpp"

namespace maniscope {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

RankedResult assemble(std::span<const double> cos, std::span<const double> geo,
                      std::span<const double> scores) {
  RankedResult result;
  result.order = order_by_score(scores);
  result.scores.reserve(scores.size());
  result.components.reserve(scores.size());
  for (const auto i : result.order) {
    result.scores.push_back(scores[i]);
    result.components.push_back({cos[i], geo[i]});
  }
  return result;
}

}  // namespace

void RerankConfig::validate() const {
  if (k < 1) throw InvalidArgument("k must be at least 1");
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw InvalidArgument("alpha must be in [0, 1], got " + std::to_string(alpha));
  }
}

std::size_t select_anchor(const CandidatePool& pool) {
  if (pool.size() == 0) throw InvalidArgument("cannot select an anchor from an empty pool");
  return 0;
}

std::vector<double> hybrid_score(std::span<const double> cos,
                                 std::span<const double> geo, double alpha) {
  if (cos.size() != geo.size()) {
    throw InvalidArgument("length mismatch: " + std::to_string(cos.size()) +
                          " cosine scores vs " + std::to_string(geo.size()) +
                          " geodesic scores");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidArgument("alpha must be in [0, 1]");
  std::vector<double> out(cos.size());
  for (std::size_t i = 0; i < cos.size(); ++i) {
    out[i] = alpha * cos[i] + (1.0 - alpha) * geo[i];
  }
  return out;
}

std::vector<std::size_t> order_by_score(std::span<const double> scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  return order;
}

RankedResult rerank(const CandidatePool& pool, const RerankConfig& cfg) {
  const auto start = Clock::now();
  cfg.validate();
  const auto sims = pairwise_similarities(pool);
  const auto graph = build_knn_graph(sims, cfg.k);
  const auto distances = dijkstra_from_anchor(graph, select_anchor(pool));
  const auto geo = geodesic_similarity(distances, cfg.variant);
  const auto scores = hybrid_score(pool.query_scores, geo, cfg.alpha);
  auto result = assemble(pool.query_scores, geo, scores);
  result.latency_ms = elapsed_ms(start);
  return result;
}

RankedResult cosine_only(const CandidatePool& pool) {
  const auto start = Clock::now();
  const std::vector<double> geo(pool.size(), 0.0);
  auto result = assemble(pool.query_scores, geo, pool.query_scores);
  result.latency_ms = elapsed_ms(start);
  return result;
}

}  // namespace maniscope
