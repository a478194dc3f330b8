#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace maniscope {

/// Graded relevance judgments for one query. Grades > 0 count as relevant.
struct QrelSet {
  std::string query_id;
  std::map<std::string, int> judgments;

  int grade(const std::string& doc_id) const {
    const auto it = judgments.find(doc_id);
    return it == judgments.end() ? 0 : it->second;
  }
  bool has_relevant() const;
};

/// Reads `query_id<TAB>doc_id<TAB>grade` lines. Blank lines are skipped.
std::map<std::string, QrelSet> load_qrels(const std::filesystem::path& path);
void write_qrels(const std::filesystem::path& path, std::span<const QrelSet> qrels);

/// Reciprocal rank of the first relevant id, 0 if none is relevant.
double mrr(std::span<const std::string> ranked_ids, const QrelSet& qrels);

/// NDCG@k with linear gain (the grade) and 1/log2(rank + 1) discount,
/// normalized by the ideal ordering of the judged grades.
double ndcg_at_k(std::span<const std::string> ranked_ids, const QrelSet& qrels,
                 std::size_t k);

/// Relevant ids in the top k divided by k; short lists count as padded
/// with non-relevant entries.
double precision_at_k(std::span<const std::string> ranked_ids,
                      const QrelSet& qrels, std::size_t k);

struct LatencyStats {
  double mean = 0.0;
  double p50 = 0.0;
  double p95 = 0.0;
};

/// Nearest-rank percentile: the ceil(p/100 * n)-th smallest sample.
double nearest_rank_percentile(std::span<const double> samples, double p);

LatencyStats latency_stats(std::span<const double> samples_ms);

}  // namespace maniscope
