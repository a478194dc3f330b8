#include "maniscope/synthgen.hpp"

#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <string>

#include "maniscope/error.hpp"

namespace maniscope {
namespace {

class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double normal() {
    if (cached_) {
      const double z = *cached_;
      cached_.reset();
      return z;
    }
    const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    cached_ = r * std::sin(theta);
    return r * std::cos(theta);
  }

  std::vector<double> normal_vector(std::size_t dim) {
    std::vector<double> v(dim);
    for (auto& x : v) x = normal();
    return v;
  }

 private:
  std::mt19937_64 engine_;
  std::optional<double> cached_;
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

void scale_to_unit(std::vector<double>& v) {
  const double n = std::sqrt(dot(v, v));
  for (auto& x : v) x /= n;
}

// Random unit vector orthogonal to every vector in `basis` while the basis
// still leaves room in the space; once it spans the space the draw is
// simply normalized.
std::vector<double> fresh_direction(GaussianSource& rng,
                                    std::vector<std::vector<double>>& basis,
                                    std::size_t dim) {
  for (;;) {
    auto v = rng.normal_vector(dim);
    if (basis.size() < dim) {
      for (const auto& b : basis) {
        const double p = dot(v, b);
        for (std::size_t i = 0; i < dim; ++i) v[i] -= p * b[i];
      }
    }
    if (std::sqrt(dot(v, v)) > 1e-8) {
      scale_to_unit(v);
      if (basis.size() < dim) basis.push_back(v);
      return v;
    }
  }
}

}  // namespace

void SynthSpec::validate() const {
  if (dim < 2) throw InvalidArgument("synthetic dimension must be at least 2");
  if (clusters < 2) throw InvalidArgument("need at least 2 clusters");
  if (per_cluster == 0) throw InvalidArgument("per_cluster must be positive");
  if (queries_per_cluster == 0) throw InvalidArgument("queries_per_cluster must be positive");
  if (!(noise_sigma >= 0.0) || !std::isfinite(noise_sigma)) {
    throw InvalidArgument("noise_sigma must be a finite value >= 0");
  }
  if (!std::isfinite(chain_step) || !std::isfinite(separation)) {
    throw InvalidArgument("chain_step and separation must be finite");
  }
}

Dataset generate(const SynthSpec& spec) {
  spec.validate();
  const std::size_t dim = spec.dim;
  GaussianSource rng(spec.seed);
  std::vector<std::vector<double>> basis;

  const auto base = fresh_direction(rng, basis, dim);
  std::vector<std::vector<double>> centroids;
  for (std::size_t c = 0; c < spec.clusters; ++c) {
    const auto offset = fresh_direction(rng, basis, dim);
    std::vector<double> mu(dim);
    for (std::size_t i = 0; i < dim; ++i) mu[i] = base[i] + spec.separation * offset[i];
    scale_to_unit(mu);
    centroids.push_back(std::move(mu));
  }
  std::vector<std::vector<double>> chain_dirs;
  for (std::size_t c = 0; c < spec.clusters; ++c) {
    chain_dirs.push_back(fresh_direction(rng, basis, dim));
  }

  const double noise_scale = spec.noise_sigma / std::sqrt(static_cast<double>(dim));
  auto noisy_point = [&](const std::vector<double>& origin, const std::vector<double>& dir,
                         double along, std::vector<float>& out) {
    for (std::size_t i = 0; i < dim; ++i) {
      const double x = origin[i] + along * dir[i] + noise_scale * rng.normal();
      out.push_back(static_cast<float>(x));
    }
  };

  std::vector<float> values;
  values.reserve(spec.clusters * spec.per_cluster * dim);
  std::vector<std::string> ids;
  for (std::size_t c = 0; c < spec.clusters; ++c) {
    for (std::size_t j = 0; j < spec.per_cluster; ++j) {
      noisy_point(centroids[c], chain_dirs[c], static_cast<double>(j) * spec.chain_step, values);
      ids.push_back("c" + std::to_string(c) + "_d" + std::to_string(j));
    }
  }

  Dataset ds;
  ds.corpus = EmbeddingMatrix(dim, std::move(values), ids);
  for (std::size_t c = 0; c < spec.clusters; ++c) {
    for (std::size_t n = 0; n < spec.queries_per_cluster; ++n) {
      QueryEmbedding q;
      q.vector.reserve(dim);
      noisy_point(centroids[c], chain_dirs[c], 0.0, q.vector);
      const std::string qid = "q" + std::to_string(c) + "_" + std::to_string(n);
      QrelSet qrels{qid, {}};
      const std::string prefix = "c" + std::to_string(c) + "_";
      for (const auto& id : ids) qrels.judgments[id] = id.rfind(prefix, 0) == 0 ? 1 : 0;
      ds.query_ids.push_back(qid);
      ds.queries.push_back(std::move(q));
      ds.qrels.push_back(std::move(qrels));
    }
  }
  return ds;
}

}  // namespace maniscope
