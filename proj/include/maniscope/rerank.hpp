#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "maniscope/geodesic.hpp"
#include "maniscope/telescope.hpp"

namespace maniscope {

struct RerankConfig {
  std::size_t k = 5;
  double alpha = 0.5;
  GeodesicVariant variant = GeodesicVariant::kMaxNorm;

  /// Throws InvalidArgument unless k >= 1 and alpha is in [0, 1].
  void validate() const;
};

/// Per-candidate similarity components kept for auditing a ranking.
struct ScoreComponents {
  double cos = 0.0;
  double geo = 0.0;
};

/// Reranked candidates. All three vectors are aligned by output rank:
/// order[r] is the pool position ranked r-th, scores[r] its hybrid score and
/// components[r] the terms that produced it.
struct RankedResult {
  std::vector<std::size_t> order;
  std::vector<double> scores;
  std::vector<ScoreComponents> components;
  double latency_ms = 0.0;

  /// Equality of the ranking content; latency is ignored.
  bool same_ranking(const RankedResult& other) const {
    return order == other.order && scores == other.scores &&
           std::equal(components.begin(), components.end(),
                      other.components.begin(), other.components.end(),
                      [](const ScoreComponents& a, const ScoreComponents& b) {
                        return a.cos == b.cos && a.geo == b.geo;
                      });
  }
};

/// The top-1 candidate, which is position 0 of a well-formed pool.
std::size_t select_anchor(const CandidatePool& pool);

/// alpha * cos + (1 - alpha) * geo, element-wise.
std::vector<double> hybrid_score(std::span<const double> cos,
                                 std::span<const double> geo, double alpha);

/// Sorts positions by descending score; equal scores keep ascending position.
std::vector<std::size_t> order_by_score(std::span<const double> scores);

/// Full microscope stage: pairwise similarities, union-kNN graph, anchor
/// Dijkstra, geodesic similarity and hybrid scoring. latency_ms covers the
/// whole call.
RankedResult rerank(const CandidatePool& pool, const RerankConfig& cfg);

/// Ranking by query cosine alone, in the same result shape as rerank().
RankedResult cosine_only(const CandidatePool& pool);

}  // namespace maniscope
