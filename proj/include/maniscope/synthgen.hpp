#pragma once

#include <cstddef>
#include <cstdint>

#include "maniscope/dataset.hpp"

namespace maniscope {

/// Parameters of a synthetic chain-cluster dataset.
///
/// Every cluster shares a common base direction (two senses of one ambiguous
/// term) and is offset from it by `separation` along its own orthogonal
/// direction. Documents of a cluster form a chain stepping away from the
/// cluster centroid by `chain_step` per document; `noise_sigma` is the
/// expected Euclidean norm of the isotropic Gaussian noise added to every
/// document and query.
struct SynthSpec {
  std::size_t clusters = 2;
  std::size_t per_cluster = 8;
  std::size_t dim = 64;
  double chain_step = 0.15;
  double noise_sigma = 0.02;
  std::uint64_t seed = 7;
  double separation = 0.18;
  std::size_t queries_per_cluster = 1;

  void validate() const;
};

/// Deterministic in the spec. Random numbers come from std::mt19937_64
/// seeded with spec.seed; uniforms are the top 53 bits scaled to [0, 1) and
/// normals use the Box-Muller transform (cosine branch first, sine branch
/// cached for the next draw). Draw order: base direction, cluster offset
/// directions, chain directions, documents (cluster-major), then queries.
///
/// Document ids are "c<cluster>_d<position>", query ids "q<cluster>_<n>".
/// Each query sits at its cluster centroid (the chain head) plus noise;
/// its cluster's documents are graded 1, every other document 0.
Dataset generate(const SynthSpec& spec);

}  // namespace maniscope
