#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "maniscope/embedding_store.hpp"
#include "maniscope/knn_graph.hpp"
#include "maniscope/telescope.hpp"

namespace maniscope::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(MANISCOPE_FIXTURE_DIR) + "/" + name;
}

inline std::vector<float> random_unit_vectors(std::mt19937_64& rng, std::size_t count,
                                              std::size_t dim) {
  std::normal_distribution<double> normal;
  std::vector<float> out(count * dim);
  for (std::size_t i = 0; i < count; ++i) {
    double n2 = 0.0;
    std::vector<double> v(dim);
    do {
      n2 = 0.0;
      for (auto& x : v) {
        x = normal(rng);
        n2 += x * x;
      }
    } while (n2 < 1e-12);
    for (std::size_t j = 0; j < dim; ++j) out[i * dim + j] = static_cast<float>(v[j] / std::sqrt(n2));
  }
  return out;
}

/// A pool of m random unit candidates ranked against a random query.
inline CandidatePool random_pool(std::mt19937_64& rng, std::size_t m, std::size_t dim) {
  const auto vectors = random_unit_vectors(rng, m, dim);
  QueryEmbedding q{random_unit_vectors(rng, 1, dim)};
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < m; ++i) ids.push_back("doc" + std::to_string(i));
  return pool_from_candidates(q, vectors, ids);
}

/// Pool whose query scores contain deliberate ties (duplicate candidates).
inline CandidatePool random_pool_with_duplicates(std::mt19937_64& rng, std::size_t m,
                                                 std::size_t dim) {
  auto vectors = random_unit_vectors(rng, m, dim);
  std::uniform_int_distribution<std::size_t> pick(0, m - 1);
  for (std::size_t n = 0; n < m / 4; ++n) {
    const auto src = pick(rng);
    const auto dst = pick(rng);
    std::copy_n(vectors.begin() + static_cast<std::ptrdiff_t>(src * dim), dim,
                vectors.begin() + static_cast<std::ptrdiff_t>(dst * dim));
  }
  QueryEmbedding q{random_unit_vectors(rng, 1, dim)};
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < m; ++i) ids.push_back("doc" + std::to_string(i));
  return pool_from_candidates(q, vectors, ids);
}

using EdgeSet = std::set<std::pair<std::size_t, std::size_t>>;

/// Union-kNN edge set by fully sorting each row (similarity descending, index
/// ascending) and taking the first k non-self entries.
inline EdgeSet brute_force_union_edges(const SimilarityMatrix& sims, std::size_t k) {
  const std::size_t m = sims.size();
  k = std::min(k, m - 1);
  EdgeSet edges;
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<std::pair<double, std::size_t>> row;
    for (std::size_t j = 0; j < m; ++j) {
      if (j != i) row.emplace_back(-sims(i, j), j);
    }
    std::sort(row.begin(), row.end());
    for (std::size_t r = 0; r < k; ++r) {
      const auto j = row[r].second;
      edges.emplace(std::min(i, j), std::max(i, j));
    }
  }
  return edges;
}

inline EdgeSet graph_edges(const KnnGraph& g) {
  EdgeSet edges;
  for (std::size_t u = 0; u < g.node_count(); ++u) {
    for (const auto v : g.neighbors(u)) edges.emplace(std::min<std::size_t>(u, v), std::max<std::size_t>(u, v));
  }
  return edges;
}

}  // namespace maniscope::testing
