#pragma once

#include <cstddef>
#include <limits>
#include <string_view>
#include <vector>

#include "maniscope/knn_graph.hpp"

namespace maniscope {

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

/// Shortest-path distances from a single anchor node.
struct GeodesicDistances {
  std::size_t anchor = 0;
  std::vector<double> dist;  // kUnreachable where no path exists

  bool reachable(std::size_t node) const { return dist[node] != kUnreachable; }
};

/// Single-source Dijkstra over the CSR graph using a binary heap.
GeodesicDistances dijkstra_from_anchor(const KnnGraph& graph, std::size_t anchor);

enum class GeodesicVariant {
  // 1 - d / max(finite d); unreachable nodes score 0.
  kMaxNorm,
  // 1 / (1 + d); unreachable nodes score 0.
  kInverseOnePlusD,
};

std::string_view to_string(GeodesicVariant variant);
/// Accepts "maxnorm"/"max_norm" and "inverse"/"inverse_one_plus_d", plus
/// their upper-case forms MAXNORM and INVERSE_ONE_PLUS_D.
GeodesicVariant parse_geodesic_variant(std::string_view name);

/// Maps geodesic distances to similarities in [0, 1].
///
/// For kMaxNorm the maximum is taken over finite distances only. When that
/// maximum is zero (a single node, or every reachable node sits at distance
/// zero) all reachable nodes score 1.
std::vector<double> geodesic_similarity(const GeodesicDistances& d,
                                        GeodesicVariant variant);

}  // namespace maniscope
