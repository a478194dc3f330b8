#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "maniscope/embedding_store.hpp"

namespace maniscope {

/// The M candidates handed from broad retrieval to the reranker.
/// query_scores is sorted descending with ties broken by ascending
/// corpus index, so position 0 is always the top-1 candidate.
struct CandidatePool {
  std::size_t dim = 0;
  std::vector<std::size_t> corpus_indices;
  std::vector<std::string> ids;
  std::vector<float> vectors;  // row-major, size() x dim
  std::vector<double> query_scores;

  std::size_t size() const { return corpus_indices.size(); }
  std::span<const float> vector(std::size_t i) const {
    return {vectors.data() + i * dim, dim};
  }
};

/// Exact top-m retrieval by cosine similarity over the whole corpus.
CandidatePool retrieve_top_m(const QueryEmbedding& query,
                             const EmbeddingMatrix& corpus, std::size_t m);

/// Builds a pool from an explicit candidate list (row-major vectors, one id
/// per row) by ranking every candidate against the query. Ids need not be
/// unique; corpus_indices refer to positions in the input list.
CandidatePool pool_from_candidates(const QueryEmbedding& query,
                                   std::span<const float> vectors,
                                   std::span<const std::string> ids);

}  // namespace maniscope
