#include "maniscope/knn_graph.hpp"

#include <algorithm>
#include <utility>

#include "maniscope/error.hpp"

namespace maniscope {

KnnGraph::KnnGraph(std::size_t node_count, std::vector<std::size_t> row_offsets,
                   std::vector<Index> col_indices, std::vector<double> weights)
    : node_count_(node_count),
      row_offsets_(std::move(row_offsets)),
      col_indices_(std::move(col_indices)),
      weights_(std::move(weights)) {
  if (row_offsets_.size() != node_count_ + 1 || row_offsets_.front() != 0 ||
      row_offsets_.back() != col_indices_.size() ||
      col_indices_.size() != weights_.size()) {
    throw InvalidArgument("inconsistent CSR arrays");
  }
}

KnnGraph build_knn_graph(const SimilarityMatrix& sims, std::size_t k) {
  const std::size_t m = sims.size();
  if (m == 0) throw InvalidArgument("cannot build a graph over zero candidates");
  if (k == 0) throw InvalidArgument("k must be at least 1");
  k = std::min(k, m - 1);

  // Union adjacency as an m x m mask. The similarity matrix is already
  // dense, so scanning the mask row by row costs no more than reading it and
  // yields CSR rows that are sorted and free of duplicates.
  std::vector<unsigned char> linked(m * m, 0);
  // Per-row top-k kept sorted by (similarity desc, index asc). Columns are
  // scanned in ascending order, so a later column only enters on a strictly
  // higher similarity; most columns are rejected by one comparison.
  std::vector<double> best_sim(k);
  std::vector<std::size_t> best_col(k);
  for (std::size_t i = 0; i < m; ++i) {
    const auto row = sims.row(i);
    std::size_t filled = 0;
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      const double s = row[j];
      if (filled == k && !(s > best_sim[k - 1])) continue;
      std::size_t pos = filled < k ? filled++ : k - 1;
      while (pos > 0 && best_sim[pos - 1] < s) {
        best_sim[pos] = best_sim[pos - 1];
        best_col[pos] = best_col[pos - 1];
        --pos;
      }
      best_sim[pos] = s;
      best_col[pos] = j;
    }
    for (std::size_t r = 0; r < k; ++r) {
      linked[i * m + best_col[r]] = 1;
      linked[best_col[r] * m + i] = 1;
    }
  }

  std::vector<std::size_t> offsets(m + 1, 0);
  std::vector<KnnGraph::Index> cols;
  std::vector<double> weights;
  cols.reserve(2 * k * m);
  weights.reserve(2 * k * m);
  for (std::size_t u = 0; u < m; ++u) {
    const unsigned char* mask = linked.data() + u * m;
    for (std::size_t v = 0; v < m; ++v) {
      if (!mask[v]) continue;
      // Weight from the upper-triangle entry so both directions agree.
      const double s = u < v ? sims(u, v) : sims(v, u);
      cols.push_back(static_cast<KnnGraph::Index>(v));
      weights.push_back(1.0 - std::clamp(s, -1.0, 1.0));
    }
    offsets[u + 1] = cols.size();
  }
  return KnnGraph(m, std::move(offsets), std::move(cols), std::move(weights));
}

}  // namespace maniscope
