#include "maniscope/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <numeric>

#include "maniscope/error.hpp"

namespace maniscope {

bool QrelSet::has_relevant() const {
  return std::any_of(judgments.begin(), judgments.end(),
                     [](const auto& kv) { return kv.second > 0; });
}

std::map<std::string, QrelSet> load_qrels(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open qrels file '" + path.string() + "'");
  std::map<std::string, QrelSet> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto t1 = line.find('\t');
    const auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos || line.find('\t', t2 + 1) != std::string::npos) {
      throw FormatError("qrels line " + std::to_string(line_no) + ": expected 3 tab-separated fields");
    }
    const std::string query_id = line.substr(0, t1);
    const std::string doc_id = line.substr(t1 + 1, t2 - t1 - 1);
    int grade = 0;
    const char* first = line.data() + t2 + 1;
    const char* last = line.data() + line.size();
    const auto [ptr, ec] = std::from_chars(first, last, grade);
    if (ec != std::errc() || ptr != last || grade < 0) {
      throw FormatError("qrels line " + std::to_string(line_no) + ": bad grade");
    }
    auto& set = out[query_id];
    set.query_id = query_id;
    set.judgments[doc_id] = grade;
  }
  return out;
}

void write_qrels(const std::filesystem::path& path, std::span<const QrelSet> qrels) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write qrels file '" + path.string() + "'");
  for (const auto& set : qrels) {
    for (const auto& [doc, grade] : set.judgments) {
      out << set.query_id << '\t' << doc << '\t' << grade << '\n';
    }
  }
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

double mrr(std::span<const std::string> ranked_ids, const QrelSet& qrels) {
  for (std::size_t r = 0; r < ranked_ids.size(); ++r) {
    if (qrels.grade(ranked_ids[r]) > 0) return 1.0 / static_cast<double>(r + 1);
  }
  return 0.0;
}

double ndcg_at_k(std::span<const std::string> ranked_ids, const QrelSet& qrels,
                 std::size_t k) {
  if (k == 0) throw InvalidArgument("k must be at least 1");
  auto discount = [](std::size_t rank) { return 1.0 / std::log2(static_cast<double>(rank) + 1.0); };

  double dcg = 0.0;
  const std::size_t depth = std::min(k, ranked_ids.size());
  for (std::size_t r = 0; r < depth; ++r) {
    dcg += qrels.grade(ranked_ids[r]) * discount(r + 1);
  }

  std::vector<int> grades;
  for (const auto& [doc, grade] : qrels.judgments) {
    if (grade > 0) grades.push_back(grade);
  }
  std::sort(grades.begin(), grades.end(), std::greater<>());
  double ideal = 0.0;
  for (std::size_t r = 0; r < std::min(k, grades.size()); ++r) {
    ideal += grades[r] * discount(r + 1);
  }
  return ideal > 0.0 ? dcg / ideal : 0.0;
}

double precision_at_k(std::span<const std::string> ranked_ids,
                      const QrelSet& qrels, std::size_t k) {
  if (k == 0) throw InvalidArgument("k must be at least 1");
  const std::size_t depth = std::min(k, ranked_ids.size());
  std::size_t hits = 0;
  for (std::size_t r = 0; r < depth; ++r) {
    if (qrels.grade(ranked_ids[r]) > 0) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(k);
}

double nearest_rank_percentile(std::span<const double> samples, double p) {
  if (samples.empty()) throw InvalidArgument("empty sample set");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  auto rank = static_cast<std::size_t>(std::ceil(p * n / 100.0));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

LatencyStats latency_stats(std::span<const double> samples_ms) {
  if (samples_ms.empty()) throw InvalidArgument("empty sample set");
  LatencyStats s;
  s.mean = std::accumulate(samples_ms.begin(), samples_ms.end(), 0.0) /
           static_cast<double>(samples_ms.size());
  s.p50 = nearest_rank_percentile(samples_ms, 50.0);
  s.p95 = nearest_rank_percentile(samples_ms, 95.0);
  return s;
}

}  // namespace maniscope
