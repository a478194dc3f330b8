#pragma once

#include <cstddef>

#include "maniscope/embedding_store.hpp"
#include "maniscope/geodesic.hpp"

namespace maniscope::reference {

// Dense, deliberately simple counterparts of the production graph path.
// They share no code with build_knn_graph or dijkstra_from_anchor and exist
// to check and benchmark those.

inline constexpr std::size_t kMaxOracleNodes = 256;

/// Builds the union-kNN graph as a dense adjacency matrix by fully sorting
/// every similarity row, runs Floyd-Warshall and returns the anchor row.
/// Refuses inputs larger than kMaxOracleNodes.
GeodesicDistances dense_geodesic_oracle(const SimilarityMatrix& sims,
                                        std::size_t k, std::size_t anchor);

/// Dense adjacency matrix plus the O(M^2) array-scan Dijkstra.
GeodesicDistances naive_dense_dijkstra(const SimilarityMatrix& sims,
                                       std::size_t k, std::size_t anchor);

}  // namespace maniscope::reference
