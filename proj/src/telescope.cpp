#include "maniscope/telescope.hpp"

#include <algorithm>
#include <numeric>

#include "maniscope/error.hpp"

namespace maniscope {
namespace {

struct Scored {
  double score;
  std::size_t index;
};

bool ranks_before(const Scored& a, const Scored& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.index < b.index;
}

// Scores every row against the query and keeps the best m, ordered.
std::vector<Scored> top_m_rows(std::span<const float> query,
                               std::span<const float> rows, std::size_t dim,
                               std::size_t m) {
  const double qnorm = norm(query);
  if (qnorm == 0.0) throw InvalidArgument("zero norm query");
  const std::size_t n = rows.size() / dim;
  std::vector<Scored> scored(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = rows.subspan(i * dim, dim);
    const double rnorm = norm(r);
    // Zero rows cannot be compared; they rank last with the minimum score.
    const double s = rnorm == 0.0 ? -1.0 : std::clamp(dot(query, r) / (qnorm * rnorm), -1.0, 1.0);
    scored[i] = {s, i};
  }
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(m),
                    scored.end(), ranks_before);
  scored.resize(m);
  return scored;
}

CandidatePool make_pool(const std::vector<Scored>& top, std::span<const float> rows,
                        std::size_t dim, std::span<const std::string> ids) {
  CandidatePool pool;
  pool.dim = dim;
  pool.corpus_indices.reserve(top.size());
  pool.ids.reserve(top.size());
  pool.query_scores.reserve(top.size());
  pool.vectors.reserve(top.size() * dim);
  for (const auto& s : top) {
    pool.corpus_indices.push_back(s.index);
    pool.ids.push_back(ids[s.index]);
    pool.query_scores.push_back(s.score);
    const auto r = rows.subspan(s.index * dim, dim);
    pool.vectors.insert(pool.vectors.end(), r.begin(), r.end());
  }
  return pool;
}

}  // namespace

CandidatePool retrieve_top_m(const QueryEmbedding& query,
                             const EmbeddingMatrix& corpus, std::size_t m) {
  if (query.dim() != corpus.dim()) {
    throw InvalidArgument("dimension mismatch: query has " + std::to_string(query.dim()) +
                          ", corpus has " + std::to_string(corpus.dim()));
  }
  if (m == 0 || m > corpus.count()) {
    throw InvalidArgument("top-m must be in [1, " + std::to_string(corpus.count()) +
                          "], got " + std::to_string(m));
  }
  const auto top = top_m_rows(query.vector, corpus.values(), corpus.dim(), m);
  return make_pool(top, corpus.values(), corpus.dim(), corpus.ids());
}

CandidatePool pool_from_candidates(const QueryEmbedding& query,
                                   std::span<const float> vectors,
                                   std::span<const std::string> ids) {
  const std::size_t dim = query.dim();
  if (dim == 0) throw InvalidArgument("query vector is empty");
  if (ids.empty()) throw InvalidArgument("no candidates");
  if (vectors.size() != ids.size() * dim) {
    throw InvalidArgument("candidate vectors do not match the query dimension");
  }
  const auto top = top_m_rows(query.vector, vectors, dim, ids.size());
  return make_pool(top, vectors, dim, ids);
}

}  // namespace maniscope
