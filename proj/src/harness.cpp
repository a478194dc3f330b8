#include "maniscope/harness.hpp"

#include <iostream>
#include <numeric>

#include "maniscope/error.hpp"
#include "maniscope/telescope.hpp"

namespace maniscope {
namespace {

constexpr std::size_t kCutoff = 3;

std::string dataset_name(const std::filesystem::path& dir) {
  auto name = dir.filename().string();
  if (name.empty()) name = dir.parent_path().filename().string();
  return name;
}

double mean_of(const std::vector<QueryEvaluation>& rows,
               double QueryEvaluation::*field) {
  double sum = 0.0;
  for (const auto& r : rows) sum += r.*field;
  return sum / static_cast<double>(rows.size());
}

EvalReport evaluate_one(RerankerKind kind, const RunConfig& cfg,
                        const std::vector<CandidatePool>& pools,
                        const std::vector<const QrelSet*>& qrels,
                        const std::vector<std::string>& query_ids,
                        const std::string& dataset_name, std::size_t skipped) {
  const auto rcfg = cfg.rerank_config();
  for (std::size_t w = 0; w < cfg.warmup_queries; ++w) {
    (void)run_reranker(kind, pools[w % pools.size()], rcfg);
  }

  EvalReport report;
  report.dataset = dataset_name;
  report.reranker = kind;
  report.top_m = cfg.top_m;
  report.k = cfg.k;
  report.alpha = cfg.alpha;
  report.variant = cfg.variant;
  report.warmup_queries = cfg.warmup_queries;
  report.seed = cfg.seed;
  report.skipped_queries = skipped;

  std::vector<double> latencies;
  for (std::size_t q = 0; q < pools.size(); ++q) {
    const auto& pool = pools[q];
    const auto ranked = run_reranker(kind, pool, rcfg);
    std::vector<std::string> ranked_ids;
    ranked_ids.reserve(ranked.order.size());
    for (const auto i : ranked.order) ranked_ids.push_back(pool.ids[i]);

    QueryEvaluation row;
    row.query_id = query_ids[q];
    row.mrr = mrr(ranked_ids, *qrels[q]);
    row.ndcg_at_3 = ndcg_at_k(ranked_ids, *qrels[q], kCutoff);
    row.p_at_3 = precision_at_k(ranked_ids, *qrels[q], kCutoff);
    row.latency_ms = ranked.latency_ms;
    latencies.push_back(ranked.latency_ms);
    report.per_query.push_back(std::move(row));
  }
  report.mean_mrr = mean_of(report.per_query, &QueryEvaluation::mrr);
  report.mean_ndcg_at_3 = mean_of(report.per_query, &QueryEvaluation::ndcg_at_3);
  report.mean_p_at_3 = mean_of(report.per_query, &QueryEvaluation::p_at_3);
  report.latency = latency_stats(latencies);
  return report;
}

}  // namespace

std::string_view to_string(RerankerKind kind) {
  return kind == RerankerKind::kCosineOnly ? "cosine" : "maniscope";
}

RerankerKind parse_reranker(std::string_view name) {
  if (name == "cosine" || name == "cosine_only" || name == "COSINE_ONLY") {
    return RerankerKind::kCosineOnly;
  }
  if (name == "maniscope" || name == "MANISCOPE") return RerankerKind::kManiscope;
  throw InvalidArgument("unknown reranker '" + std::string(name) +
                        "' (expected maniscope or cosine)");
}

std::string_view to_string(ReportFormat format) {
  switch (format) {
    case ReportFormat::kJson:
      return "json";
    case ReportFormat::kCsv:
      return "csv";
    case ReportFormat::kMarkdown:
      return "markdown";
  }
  return "unknown";
}

ReportFormat parse_report_format(std::string_view name) {
  if (name == "json") return ReportFormat::kJson;
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "markdown" || name == "md") return ReportFormat::kMarkdown;
  throw InvalidArgument("unknown report format '" + std::string(name) +
                        "' (expected json, csv or markdown)");
}

std::vector<std::string> RunConfig::validate() const {
  if (rerankers.empty()) throw InvalidArgument("no rerankers selected");
  if (top_m == 0) throw InvalidArgument("top-m must be positive");
  rerank_config().validate();
  std::vector<std::string> warnings;
  if (top_m < k + 1) {
    warnings.push_back("top-m " + std::to_string(top_m) + " is below k + 1 = " +
                       std::to_string(k + 1) + "; k will be clamped to top-m - 1");
  }
  return warnings;
}

RankedResult run_reranker(RerankerKind kind, const CandidatePool& pool,
                          const RerankConfig& cfg) {
  return kind == RerankerKind::kCosineOnly ? cosine_only(pool) : rerank(pool, cfg);
}

std::vector<EvalReport> run_eval(const RunConfig& cfg, const Dataset& dataset,
                                 const std::string& dataset_name) {
  cfg.validate();
  if (dataset.queries.empty()) throw InvalidArgument("no queries");
  if (cfg.top_m > dataset.corpus.count()) {
    throw InvalidArgument("top-m " + std::to_string(cfg.top_m) + " exceeds corpus size " +
                          std::to_string(dataset.corpus.count()));
  }

  // Stage 1 is shared by every reranker and sits outside the timed span.
  std::vector<CandidatePool> pools;
  std::vector<const QrelSet*> qrels;
  std::vector<std::string> query_ids;
  std::size_t skipped = 0;
  for (std::size_t q = 0; q < dataset.queries.size(); ++q) {
    if (!dataset.qrels[q].has_relevant()) {
      ++skipped;
      continue;
    }
    pools.push_back(retrieve_top_m(dataset.queries[q], dataset.corpus, cfg.top_m));
    qrels.push_back(&dataset.qrels[q]);
    query_ids.push_back(dataset.query_ids[q]);
  }
  if (skipped > 0) {
    std::clog << "maniscope: skipped " << skipped << " quer" << (skipped == 1 ? "y" : "ies")
              << " without relevance judgments\n";
  }
  if (pools.empty()) throw InvalidArgument("no queries with relevance judgments");

  std::vector<EvalReport> reports;
  for (const auto kind : cfg.rerankers) {
    reports.push_back(evaluate_one(kind, cfg, pools, qrels, query_ids, dataset_name, skipped));
  }
  return reports;
}

std::vector<EvalReport> run_eval(const RunConfig& cfg) {
  return run_eval(cfg, load_dataset(cfg.dataset_dir), dataset_name(cfg.dataset_dir));
}

std::vector<SweepCell> sweep(const RunConfig& cfg, const std::vector<std::size_t>& k_values,
                             const std::vector<double>& alpha_values) {
  if (k_values.empty() || alpha_values.empty()) {
    throw InvalidArgument("sweep grids must be nonempty");
  }
  const auto dataset = load_dataset(cfg.dataset_dir);
  const auto name = dataset_name(cfg.dataset_dir);

  std::vector<SweepCell> cells;
  for (const auto k : k_values) {
    for (const auto alpha : alpha_values) {
      RunConfig cell_cfg = cfg;
      cell_cfg.k = k;
      cell_cfg.alpha = alpha;
      cells.push_back({k, alpha, run_eval(cell_cfg, dataset, name)});
    }
  }
  return cells;
}

}  // namespace maniscope
