#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "maniscope/embedding_store.hpp"
#include "maniscope/metrics.hpp"

namespace maniscope {

/// A corpus plus labelled queries. On disk a dataset is a directory with
///   corpus.emb      corpus vectors
///   ids.txt         corpus document ids, one per row
///   queries.emb     query vectors
///   query_ids.txt   query ids, one per row of queries.emb
///   qrels.tsv       query_id<TAB>doc_id<TAB>grade
struct Dataset {
  EmbeddingMatrix corpus;
  std::vector<std::string> query_ids;
  std::vector<QueryEmbedding> queries;
  std::vector<QrelSet> qrels;  // one per query, same order as query_ids
};

namespace dataset_files {
inline constexpr const char* kCorpus = "corpus.emb";
inline constexpr const char* kCorpusIds = "ids.txt";
inline constexpr const char* kQueries = "queries.emb";
inline constexpr const char* kQueryIds = "query_ids.txt";
inline constexpr const char* kQrels = "qrels.tsv";
}  // namespace dataset_files

/// Writes all five files, creating `dir` if needed.
void write_dataset(const Dataset& dataset, const std::filesystem::path& dir);

/// Loads a dataset directory. Queries without any judgments get an empty
/// QrelSet; the harness decides what to do with them.
Dataset load_dataset(const std::filesystem::path& dir);

}  // namespace maniscope
