#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "json.hpp"
#include "maniscope/harness.hpp"

namespace maniscope {

// Version of the JSON report layout; bump on any change to field names or
// structure.
//
//   {
//     "schema_version": 1,
//     "reports": [{
//       "dataset": str, "reranker": "maniscope" | "cosine",
//       "config": {"top_m", "k", "alpha", "variant", "warmup_queries", "seed"},
//       "queries": int, "skipped_queries": int,
//       "aggregates": {"mrr", "ndcg_at_3", "p_at_3",
//                      "latency_mean_ms", "latency_p50_ms", "latency_p95_ms"},
//       "per_query": [{"query_id", "mrr", "ndcg_at_3", "p_at_3", "latency_ms"}]
//     }]
//   }
//
// A sweep document replaces "reports" with
//   "sweep": [{"k": int, "alpha": num, "reports": [...]}].
// Masked reports carry null in every latency field.
inline constexpr int kReportSchemaVersion = 1;

struct RenderOptions {
  bool mask_latency = false;
};

nlohmann::json report_to_json(const EvalReport& report, RenderOptions opts = {});

std::string render_reports(std::span<const EvalReport> reports, ReportFormat format,
                           RenderOptions opts = {});
std::string render_sweep(std::span<const SweepCell> cells, ReportFormat format,
                         RenderOptions opts = {});

/// Writes text to path, or to stdout when path is empty or "-".
void write_text(const std::string& text, const std::filesystem::path& path);

void emit_report(std::span<const EvalReport> reports, ReportFormat format,
                 const std::filesystem::path& path, RenderOptions opts = {});

}  // namespace maniscope
