#include "maniscope/reference.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "maniscope/error.hpp"

namespace maniscope::reference {
namespace {

// Dense adjacency with kUnreachable marking absent edges. Neighbor sets come
// from a full stable sort of each row.
std::vector<std::vector<double>> dense_union_knn(const SimilarityMatrix& sims,
                                                 std::size_t k) {
  const std::size_t m = sims.size();
  if (m == 0) throw InvalidArgument("empty similarity matrix");
  k = std::min(k, m - 1);
  std::vector<std::vector<double>> adj(m, std::vector<double>(m, kUnreachable));
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<std::size_t> others;
    for (std::size_t j = 0; j < m; ++j) {
      if (j != i) others.push_back(j);
    }
    std::stable_sort(others.begin(), others.end(),
                     [&](std::size_t a, std::size_t b) { return sims(i, a) > sims(i, b); });
    for (std::size_t r = 0; r < k; ++r) {
      const std::size_t j = others[r];
      const double s = sims(std::min(i, j), std::max(i, j));
      const double w = 1.0 - std::clamp(s, -1.0, 1.0);
      adj[i][j] = w;
      adj[j][i] = w;
    }
  }
  return adj;
}

void check_anchor(std::size_t anchor, std::size_t m) {
  if (anchor >= m) {
    throw InvalidArgument("anchor " + std::to_string(anchor) + " out of range");
  }
}

}  // namespace

GeodesicDistances dense_geodesic_oracle(const SimilarityMatrix& sims,
                                        std::size_t k, std::size_t anchor) {
  const std::size_t m = sims.size();
  if (m > kMaxOracleNodes) {
    throw InvalidArgument("oracle limited to " + std::to_string(kMaxOracleNodes) +
                          " nodes, got " + std::to_string(m));
  }
  check_anchor(anchor, m);
  auto d = dense_union_knn(sims, k);
  for (std::size_t i = 0; i < m; ++i) d[i][i] = 0.0;
  for (std::size_t via = 0; via < m; ++via) {
    for (std::size_t i = 0; i < m; ++i) {
      if (d[i][via] == kUnreachable) continue;
      for (std::size_t j = 0; j < m; ++j) {
        const double alt = d[i][via] + d[via][j];
        if (alt < d[i][j]) d[i][j] = alt;
      }
    }
  }
  return {anchor, d[anchor]};
}

GeodesicDistances naive_dense_dijkstra(const SimilarityMatrix& sims,
                                       std::size_t k, std::size_t anchor) {
  const std::size_t m = sims.size();
  check_anchor(anchor, m);
  const auto adj = dense_union_knn(sims, k);
  std::vector<double> dist(m, kUnreachable);
  std::vector<bool> done(m, false);
  dist[anchor] = 0.0;
  for (std::size_t step = 0; step < m; ++step) {
    std::size_t u = m;
    for (std::size_t v = 0; v < m; ++v) {
      if (!done[v] && dist[v] != kUnreachable && (u == m || dist[v] < dist[u])) u = v;
    }
    if (u == m) break;
    done[u] = true;
    for (std::size_t v = 0; v < m; ++v) {
      if (adj[u][v] != kUnreachable && dist[u] + adj[u][v] < dist[v]) {
        dist[v] = dist[u] + adj[u][v];
      }
    }
  }
  return {anchor, std::move(dist)};
}

}  // namespace maniscope::reference
