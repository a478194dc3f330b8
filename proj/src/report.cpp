#include "maniscope/report.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "maniscope/error.hpp"

namespace maniscope {
namespace {

using nlohmann::json;

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  return buf;
}

json latency_value(double v, RenderOptions opts) {
  return opts.mask_latency ? json(nullptr) : json(v);
}

std::string latency_text(double v, RenderOptions opts, int decimals) {
  return opts.mask_latency ? "-" : fixed(v, decimals);
}

std::string display_name(RerankerKind kind) {
  return kind == RerankerKind::kCosineOnly ? "Cosine" : "Maniscope";
}

constexpr const char* kCsvHeader =
    "dataset,reranker,queries,skipped_queries,mrr,ndcg_at_3,p_at_3,"
    "latency_mean_ms,latency_p50_ms,latency_p95_ms";

std::string csv_row(const EvalReport& r, RenderOptions opts) {
  std::ostringstream out;
  out << r.dataset << ',' << to_string(r.reranker) << ',' << r.per_query.size() << ','
      << r.skipped_queries << ',' << fixed(r.mean_mrr, 6) << ',' << fixed(r.mean_ndcg_at_3, 6)
      << ',' << fixed(r.mean_p_at_3, 6) << ',' << latency_text(r.latency.mean, opts, 4) << ','
      << latency_text(r.latency.p50, opts, 4) << ',' << latency_text(r.latency.p95, opts, 4);
  return out.str();
}

std::string markdown_cells(const EvalReport& r, RenderOptions opts) {
  return "| " + r.dataset + " | " + std::to_string(r.per_query.size()) + " | " +
         display_name(r.reranker) + " | " + fixed(r.mean_mrr, 4) + " | " +
         fixed(r.mean_ndcg_at_3, 4) + " | " + fixed(r.mean_p_at_3, 4) + " | " +
         latency_text(r.latency.mean, opts, 2) + " |";
}

}  // namespace

json report_to_json(const EvalReport& r, RenderOptions opts) {
  json per_query = json::array();
  for (const auto& q : r.per_query) {
    per_query.push_back({{"query_id", q.query_id},
                         {"mrr", q.mrr},
                         {"ndcg_at_3", q.ndcg_at_3},
                         {"p_at_3", q.p_at_3},
                         {"latency_ms", latency_value(q.latency_ms, opts)}});
  }
  return {
      {"dataset", r.dataset},
      {"reranker", std::string(to_string(r.reranker))},
      {"config",
       {{"top_m", r.top_m},
        {"k", r.k},
        {"alpha", r.alpha},
        {"variant", std::string(to_string(r.variant))},
        {"warmup_queries", r.warmup_queries},
        {"seed", r.seed}}},
      {"queries", r.per_query.size()},
      {"skipped_queries", r.skipped_queries},
      {"aggregates",
       {{"mrr", r.mean_mrr},
        {"ndcg_at_3", r.mean_ndcg_at_3},
        {"p_at_3", r.mean_p_at_3},
        {"latency_mean_ms", latency_value(r.latency.mean, opts)},
        {"latency_p50_ms", latency_value(r.latency.p50, opts)},
        {"latency_p95_ms", latency_value(r.latency.p95, opts)}}},
      {"per_query", std::move(per_query)},
  };
}

std::string render_reports(std::span<const EvalReport> reports, ReportFormat format,
                           RenderOptions opts) {
  std::ostringstream out;
  switch (format) {
    case ReportFormat::kJson: {
      json doc = {{"schema_version", kReportSchemaVersion}, {"reports", json::array()}};
      for (const auto& r : reports) doc["reports"].push_back(report_to_json(r, opts));
      out << doc.dump(2) << '\n';
      break;
    }
    case ReportFormat::kCsv:
      out << kCsvHeader << '\n';
      for (const auto& r : reports) out << csv_row(r, opts) << '\n';
      break;
    case ReportFormat::kMarkdown:
      out << "| Dataset | Queries | ReRanker | MRR | NDCG@3 | P@3 | Lat.(ms) |\n"
          << "|---|---:|---|---:|---:|---:|---:|\n";
      for (const auto& r : reports) out << markdown_cells(r, opts) << '\n';
      break;
  }
  return out.str();
}

std::string render_sweep(std::span<const SweepCell> cells, ReportFormat format,
                         RenderOptions opts) {
  std::ostringstream out;
  switch (format) {
    case ReportFormat::kJson: {
      json doc = {{"schema_version", kReportSchemaVersion}, {"sweep", json::array()}};
      for (const auto& cell : cells) {
        json reports = json::array();
        for (const auto& r : cell.reports) reports.push_back(report_to_json(r, opts));
        doc["sweep"].push_back({{"k", cell.k}, {"alpha", cell.alpha}, {"reports", reports}});
      }
      out << doc.dump(2) << '\n';
      break;
    }
    case ReportFormat::kCsv:
      out << "k,alpha," << kCsvHeader << '\n';
      for (const auto& cell : cells) {
        for (const auto& r : cell.reports) {
          out << cell.k << ',' << fixed(cell.alpha, 4) << ',' << csv_row(r, opts) << '\n';
        }
      }
      break;
    case ReportFormat::kMarkdown:
      out << "| k | alpha | Dataset | Queries | ReRanker | MRR | NDCG@3 | P@3 | Lat.(ms) |\n"
          << "|---:|---:|---|---:|---|---:|---:|---:|---:|\n";
      for (const auto& cell : cells) {
        for (const auto& r : cell.reports) {
          out << "| " << cell.k << " | " << fixed(cell.alpha, 2) << ' '
              << markdown_cells(r, opts) << '\n';
        }
      }
      break;
  }
  return out.str();
}

void write_text(const std::string& text, const std::filesystem::path& path) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write report '" + path.string() + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

void emit_report(std::span<const EvalReport> reports, ReportFormat format,
                 const std::filesystem::path& path, RenderOptions opts) {
  write_text(render_reports(reports, format, opts), path);
}

}  // namespace maniscope
