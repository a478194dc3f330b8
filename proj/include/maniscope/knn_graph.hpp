#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "maniscope/embedding_store.hpp"

namespace maniscope {

/// Undirected weighted k-NN graph in compressed sparse row layout.
///
/// Both directions of every edge are stored, so neighbors(i) lists all nodes
/// adjacent to i, sorted by ascending index. Weights are cosine distances
/// (1 - similarity) and lie in [0, 2].
class KnnGraph {
 public:
  using Index = std::uint32_t;

  KnnGraph() = default;
  KnnGraph(std::size_t node_count, std::vector<std::size_t> row_offsets,
           std::vector<Index> col_indices, std::vector<double> weights);

  std::size_t node_count() const { return node_count_; }
  /// Number of undirected edges.
  std::size_t edge_count() const { return col_indices_.size() / 2; }

  std::span<const Index> neighbors(std::size_t node) const {
    return {col_indices_.data() + row_offsets_[node],
            row_offsets_[node + 1] - row_offsets_[node]};
  }
  std::span<const double> weights(std::size_t node) const {
    return {weights_.data() + row_offsets_[node],
            row_offsets_[node + 1] - row_offsets_[node]};
  }

  const std::vector<std::size_t>& row_offsets() const { return row_offsets_; }
  const std::vector<Index>& col_indices() const { return col_indices_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::size_t node_count_ = 0;
  std::vector<std::size_t> row_offsets_{0};
  std::vector<Index> col_indices_;
  std::vector<double> weights_;
};

/// Union-of-kNN graph over a similarity matrix.
///
/// Edge (i, j) exists iff j is among the k most similar nodes to i, or i is
/// among the k most similar to j. Self-similarity is ignored, ties prefer the
/// lower index, and k is clamped to M - 1. The edge weight is
/// 1 - sims(min(i,j), max(i,j)) after clamping the similarity to [-1, 1].
KnnGraph build_knn_graph(const SimilarityMatrix& sims, std::size_t k);

}  // namespace maniscope
