#include "maniscope/embedding_store.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "maniscope/error.hpp"
#include "maniscope/telescope.hpp"

namespace maniscope {
namespace {

constexpr double kUnitNormTolerance = 1e-5;

template <typename T>
T byteswap_if_big_endian(T value) {
  if constexpr (std::endian::native == std::endian::little) {
    return value;
  } else {
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, &value, sizeof(T));
    std::reverse(bytes, bytes + sizeof(T));
    std::memcpy(&value, bytes, sizeof(T));
    return value;
  }
}

template <typename T>
T read_le(const unsigned char* p) {
  T value;
  std::memcpy(&value, p, sizeof(T));
  return byteswap_if_big_endian(value);
}

template <typename T>
void write_le(std::ostream& out, T value) {
  value = byteswap_if_big_endian(value);
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

std::string describe(const std::filesystem::path& path) {
  return "'" + path.string() + "'";
}

}  // namespace

EmbeddingMatrix::EmbeddingMatrix(std::size_t dim, std::vector<float> values,
                                 std::vector<std::string> ids, bool normalized)
    : dim_(dim),
      values_(std::move(values)),
      ids_(std::move(ids)),
      normalized_(normalized) {
  if (dim_ == 0) throw InvalidArgument("embedding dimension must be positive");
  if (ids_.empty()) throw InvalidArgument("embedding matrix has no rows");
  if (values_.size() != dim_ * ids_.size()) {
    throw InvalidArgument("count mismatch: " + std::to_string(ids_.size()) +
                          " ids but " + std::to_string(values_.size()) +
                          " values for dimension " + std::to_string(dim_));
  }
  std::unordered_set<std::string_view> seen;
  seen.reserve(ids_.size());
  for (const auto& id : ids_) {
    if (!seen.insert(id).second) throw InvalidArgument("duplicate id '" + id + "'");
  }
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    const auto r = row(i);
    if (!std::all_of(r.begin(), r.end(), [](float x) { return std::isfinite(x); })) {
      throw InvalidArgument("non-finite value in row '" + ids_[i] + "'");
    }
    if (normalized_ && std::abs(norm(r) - 1.0) > kUnitNormTolerance) {
      throw InvalidArgument("row '" + ids_[i] + "' is flagged normalized but is not unit norm");
    }
  }
}

EmbeddingPayload read_embedding_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open embedding file " + describe(path));
  const std::string bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
  if (bytes.size() < kEmbeddingHeaderBytes) {
    throw FormatError("malformed header in " + describe(path) + ": file too short");
  }
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
  if (std::memcmp(p, kEmbeddingMagic, 4) != 0) {
    throw FormatError("malformed header in " + describe(path) + ": bad magic");
  }
  const auto version = read_le<std::uint32_t>(p + 4);
  if (version != kEmbeddingVersion) {
    throw FormatError("malformed header in " + describe(path) +
                      ": unsupported version " + std::to_string(version));
  }
  EmbeddingPayload payload;
  payload.dim = read_le<std::uint32_t>(p + 8);
  const auto count = read_le<std::uint64_t>(p + 12);
  if (payload.dim == 0 || count == 0) {
    throw FormatError("malformed header in " + describe(path) + ": zero dimension or count");
  }
  const std::size_t body = bytes.size() - kEmbeddingHeaderBytes;
  if (body % (payload.dim * sizeof(float)) != 0 ||
      body / (payload.dim * sizeof(float)) != count) {
    throw FormatError("count mismatch in " + describe(path) + ": header declares " +
                      std::to_string(count) + " rows of dimension " +
                      std::to_string(payload.dim) + " but payload holds " +
                      std::to_string(body) + " bytes");
  }
  payload.count = static_cast<std::size_t>(count);
  payload.values.resize(payload.count * payload.dim);
  const unsigned char* data = p + kEmbeddingHeaderBytes;
  for (std::size_t i = 0; i < payload.values.size(); ++i) {
    payload.values[i] = std::bit_cast<float>(read_le<std::uint32_t>(data + 4 * i));
  }
  return payload;
}

void write_embedding_file(const std::filesystem::path& path, std::size_t dim,
                          std::span<const float> values) {
  if (dim == 0 || values.size() % dim != 0) {
    throw InvalidArgument("payload size is not a multiple of the dimension");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write embedding file " + describe(path));
  out.write(kEmbeddingMagic, 4);
  write_le<std::uint32_t>(out, kEmbeddingVersion);
  write_le<std::uint32_t>(out, static_cast<std::uint32_t>(dim));
  write_le<std::uint64_t>(out, static_cast<std::uint64_t>(values.size() / dim));
  for (float v : values) write_le<std::uint32_t>(out, std::bit_cast<std::uint32_t>(v));
  if (!out) throw IoError("write failed for " + describe(path));
}

std::vector<std::string> read_id_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open id manifest " + describe(path));
  std::vector<std::string> ids;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ids.push_back(line);
  }
  return ids;
}

void write_id_manifest(const std::filesystem::path& path,
                       std::span<const std::string> ids) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write id manifest " + describe(path));
  for (const auto& id : ids) {
    if (id.find('\n') != std::string::npos) {
      throw InvalidArgument("id contains a newline: '" + id + "'");
    }
    out << id << '\n';
  }
  if (!out) throw IoError("write failed for " + describe(path));
}

EmbeddingMatrix load_embeddings(const std::filesystem::path& path,
                                const std::filesystem::path& manifest_path) {
  auto payload = read_embedding_file(path);
  auto ids = read_id_manifest(manifest_path);
  if (ids.size() != payload.count) {
    throw FormatError("count mismatch: manifest " + describe(manifest_path) + " has " +
                      std::to_string(ids.size()) + " ids, header declares " +
                      std::to_string(payload.count));
  }
  return EmbeddingMatrix(payload.dim, std::move(payload.values), std::move(ids));
}

void save_embeddings(const EmbeddingMatrix& m, const std::filesystem::path& path,
                     const std::filesystem::path& manifest_path) {
  write_embedding_file(path, m.dim(), m.values());
  write_id_manifest(manifest_path, m.ids());
}

double dot(std::span<const float> a, std::span<const float> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  }
  return acc;
}

double norm(std::span<const float> a) { return std::sqrt(dot(a, a)); }

EmbeddingMatrix normalize(const EmbeddingMatrix& m) {
  std::vector<float> values(m.values().size());
  for (std::size_t i = 0; i < m.count(); ++i) {
    const auto r = m.row(i);
    const double n = norm(r);
    if (n == 0.0) throw InvalidArgument("zero norm row '" + m.ids()[i] + "'");
    for (std::size_t j = 0; j < m.dim(); ++j) {
      values[i * m.dim() + j] = static_cast<float>(static_cast<double>(r[j]) / n);
    }
  }
  return EmbeddingMatrix(m.dim(), std::move(values), m.ids(), true);
}

double cosine_similarity(std::span<const float> a, std::span<const float> b) {
  if (a.size() != b.size()) {
    throw InvalidArgument("dimension mismatch: " + std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()));
  }
  const double na = norm(a);
  const double nb = norm(b);
  if (na == 0.0 || nb == 0.0) throw InvalidArgument("zero norm vector");
  return std::clamp(dot(a, b) / (na * nb), -1.0, 1.0);
}

SimilarityMatrix pairwise_similarities(std::span<const float> vectors,
                                       std::size_t dim) {
  if (dim == 0 || vectors.empty() || vectors.size() % dim != 0) {
    throw InvalidArgument("pairwise similarities need at least one vector");
  }
  const std::size_t n = vectors.size() / dim;
  auto vec = [&](std::size_t i) { return vectors.subspan(i * dim, dim); };

  std::vector<double> norms(n);
  for (std::size_t i = 0; i < n; ++i) {
    norms[i] = norm(vec(i));
    if (norms[i] == 0.0) {
      throw InvalidArgument("zero norm vector at position " + std::to_string(i));
    }
  }
  SimilarityMatrix sims(n);
  for (std::size_t i = 0; i < n; ++i) {
    sims(i, i) = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double s = std::clamp(dot(vec(i), vec(j)) / (norms[i] * norms[j]), -1.0, 1.0);
      sims(i, j) = s;
      sims(j, i) = s;
    }
  }
  return sims;
}

SimilarityMatrix pairwise_similarities(const CandidatePool& pool) {
  return pairwise_similarities(pool.vectors, pool.dim);
}

}  // namespace maniscope
