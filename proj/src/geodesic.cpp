#include "maniscope/geodesic.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <string>
#include <utility>

#include "maniscope/error.hpp"

namespace maniscope {

GeodesicDistances dijkstra_from_anchor(const KnnGraph& graph, std::size_t anchor) {
  const std::size_t m = graph.node_count();
  if (anchor >= m) {
    throw InvalidArgument("anchor " + std::to_string(anchor) + " out of range for " +
                          std::to_string(m) + " nodes");
  }
  GeodesicDistances out{anchor, std::vector<double>(m, kUnreachable)};
  auto& dist = out.dist;

  // Lazy-deletion binary heap: stale entries are skipped when popped.
  using Entry = std::pair<double, std::size_t>;
  std::vector<Entry> storage;
  storage.reserve(graph.col_indices().size() + 1);
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap(
      std::greater<>{}, std::move(storage));

  dist[anchor] = 0.0;
  heap.emplace(0.0, anchor);
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    const auto nbrs = graph.neighbors(u);
    const auto ws = graph.weights(u);
    for (std::size_t e = 0; e < nbrs.size(); ++e) {
      const double alt = d + ws[e];
      if (alt < dist[nbrs[e]]) {
        dist[nbrs[e]] = alt;
        heap.emplace(alt, nbrs[e]);
      }
    }
  }
  return out;
}

std::string_view to_string(GeodesicVariant variant) {
  switch (variant) {
    case GeodesicVariant::kMaxNorm:
      return "maxnorm";
    case GeodesicVariant::kInverseOnePlusD:
      return "inverse";
  }
  return "unknown";
}

GeodesicVariant parse_geodesic_variant(std::string_view name) {
  if (name == "maxnorm" || name == "max_norm" || name == "MAXNORM") {
    return GeodesicVariant::kMaxNorm;
  }
  if (name == "inverse" || name == "inverse_one_plus_d" || name == "INVERSE_ONE_PLUS_D") {
    return GeodesicVariant::kInverseOnePlusD;
  }
  throw InvalidArgument("unknown geodesic variant '" + std::string(name) +
                        "' (expected maxnorm or inverse)");
}

std::vector<double> geodesic_similarity(const GeodesicDistances& d,
                                        GeodesicVariant variant) {
  std::vector<double> sim(d.dist.size(), 0.0);
  switch (variant) {
    case GeodesicVariant::kMaxNorm: {
      double max_finite = 0.0;
      for (double x : d.dist) {
        if (x != kUnreachable) max_finite = std::max(max_finite, x);
      }
      for (std::size_t i = 0; i < sim.size(); ++i) {
        if (!d.reachable(i)) continue;
        sim[i] = max_finite > 0.0 ? std::clamp(1.0 - d.dist[i] / max_finite, 0.0, 1.0) : 1.0;
      }
      break;
    }
    case GeodesicVariant::kInverseOnePlusD:
      for (std::size_t i = 0; i < sim.size(); ++i) {
        if (d.reachable(i)) sim[i] = 1.0 / (1.0 + d.dist[i]);
      }
      break;
  }
  return sim;
}

}  // namespace maniscope
