#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace maniscope {

/// Row-major N x D matrix of 32-bit embeddings with one document id per row.
///
/// Construction validates the invariants (unique ids, finite entries, and unit
/// rows when the matrix claims to be normalized); afterwards the matrix is
/// immutable and safe to share between threads.
class EmbeddingMatrix {
 public:
  EmbeddingMatrix() = default;
  EmbeddingMatrix(std::size_t dim, std::vector<float> values,
                  std::vector<std::string> ids, bool normalized = false);

  std::size_t dim() const { return dim_; }
  std::size_t count() const { return ids_.size(); }
  bool normalized() const { return normalized_; }

  std::span<const float> row(std::size_t i) const {
    return {values_.data() + i * dim_, dim_};
  }
  const std::vector<float>& values() const { return values_; }
  const std::vector<std::string>& ids() const { return ids_; }

 private:
  std::size_t dim_ = 0;
  std::vector<float> values_;
  std::vector<std::string> ids_;
  bool normalized_ = false;
};

/// A single query vector. Dimension is checked against the corpus at use.
struct QueryEmbedding {
  std::vector<float> vector;

  std::size_t dim() const { return vector.size(); }
};

/// Square matrix of pairwise similarities, stored row-major in doubles.
class SimilarityMatrix {
 public:
  SimilarityMatrix() = default;
  explicit SimilarityMatrix(std::size_t n) : n_(n), values_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const {
    return values_[i * n_ + j];
  }
  double& operator()(std::size_t i, std::size_t j) {
    return values_[i * n_ + j];
  }
  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * n_, n_};
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> values_;
};

// Binary .emb layout: "MSEB", u32 version, u32 dim, u64 count, then
// count * dim little-endian f32 values in row-major order.
inline constexpr char kEmbeddingMagic[4] = {'M', 'S', 'E', 'B'};
inline constexpr std::uint32_t kEmbeddingVersion = 1;
inline constexpr std::size_t kEmbeddingHeaderBytes = 20;

/// Raw payload of an .emb file without ids.
struct EmbeddingPayload {
  std::size_t dim = 0;
  std::size_t count = 0;
  std::vector<float> values;
};

EmbeddingPayload read_embedding_file(const std::filesystem::path& path);
void write_embedding_file(const std::filesystem::path& path, std::size_t dim,
                          std::span<const float> values);

std::vector<std::string> read_id_manifest(const std::filesystem::path& path);
void write_id_manifest(const std::filesystem::path& path,
                       std::span<const std::string> ids);

/// Loads an .emb payload plus its id manifest. Rows are returned exactly as
/// stored; call normalize() explicitly if unit rows are needed.
EmbeddingMatrix load_embeddings(const std::filesystem::path& path,
                                const std::filesystem::path& manifest_path);
void save_embeddings(const EmbeddingMatrix& m, const std::filesystem::path& path,
                     const std::filesystem::path& manifest_path);

/// Returns a copy with every row scaled to unit Euclidean norm.
/// Throws InvalidArgument naming the first zero-norm row.
EmbeddingMatrix normalize(const EmbeddingMatrix& m);

/// Cosine similarity accumulated in double precision and clamped to [-1, 1].
double cosine_similarity(std::span<const float> a, std::span<const float> b);

double dot(std::span<const float> a, std::span<const float> b);
double norm(std::span<const float> a);

struct CandidatePool;

/// All-pairs cosine similarities over the pool vectors. The diagonal is
/// exactly 1.0 and the result is symmetric by construction.
SimilarityMatrix pairwise_similarities(const CandidatePool& pool);

/// Same as above for a raw row-major block of `count` vectors.
SimilarityMatrix pairwise_similarities(std::span<const float> vectors,
                                       std::size_t dim);

}  // namespace maniscope
