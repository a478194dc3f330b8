#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "maniscope/dataset.hpp"
#include "maniscope/metrics.hpp"
#include "maniscope/rerank.hpp"

namespace maniscope {

enum class RerankerKind {
  kCosineOnly,  // stage-1 order, the no-reranking control
  kManiscope,   // geodesic hybrid rerank
};

std::string_view to_string(RerankerKind kind);
/// Accepts "cosine" / "cosine_only" and "maniscope".
RerankerKind parse_reranker(std::string_view name);

enum class ReportFormat { kJson, kCsv, kMarkdown };

std::string_view to_string(ReportFormat format);
ReportFormat parse_report_format(std::string_view name);

struct RunConfig {
  std::filesystem::path dataset_dir;
  std::vector<RerankerKind> rerankers{RerankerKind::kManiscope, RerankerKind::kCosineOnly};
  std::size_t top_m = 100;
  std::size_t k = 5;
  double alpha = 0.5;
  GeodesicVariant variant = GeodesicVariant::kMaxNorm;
  std::filesystem::path output;
  ReportFormat format = ReportFormat::kJson;
  std::size_t warmup_queries = 5;
  std::uint64_t seed = 0;  // echoed into reports; evaluation itself is deterministic

  RerankConfig rerank_config() const { return {k, alpha, variant}; }
  /// Throws on invalid settings; returns advisory warnings otherwise.
  std::vector<std::string> validate() const;
};

struct QueryEvaluation {
  std::string query_id;
  double mrr = 0.0;
  double ndcg_at_3 = 0.0;
  double p_at_3 = 0.0;
  double latency_ms = 0.0;
};

struct EvalReport {
  std::string dataset;
  RerankerKind reranker = RerankerKind::kManiscope;
  std::size_t top_m = 0;
  std::size_t k = 0;
  double alpha = 0.0;
  GeodesicVariant variant = GeodesicVariant::kMaxNorm;
  std::size_t warmup_queries = 0;
  std::uint64_t seed = 0;
  std::size_t skipped_queries = 0;

  std::vector<QueryEvaluation> per_query;
  double mean_mrr = 0.0;
  double mean_ndcg_at_3 = 0.0;
  double mean_p_at_3 = 0.0;
  LatencyStats latency;
};

/// Ranks the pool with the given reranker.
RankedResult run_reranker(RerankerKind kind, const CandidatePool& pool,
                          const RerankConfig& cfg);

/// Evaluates every configured reranker on an already-loaded dataset.
/// Queries without a relevant judgment are skipped and counted.
std::vector<EvalReport> run_eval(const RunConfig& cfg, const Dataset& dataset,
                                 const std::string& dataset_name);

/// Loads cfg.dataset_dir and evaluates it.
std::vector<EvalReport> run_eval(const RunConfig& cfg);

struct SweepCell {
  std::size_t k = 0;
  double alpha = 0.0;
  std::vector<EvalReport> reports;
};

/// Cartesian product of k and alpha values, k-major.
std::vector<SweepCell> sweep(const RunConfig& cfg, const std::vector<std::size_t>& k_values,
                             const std::vector<double>& alpha_values);

}  // namespace maniscope
