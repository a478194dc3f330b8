#include "maniscope/dataset.hpp"

#include <system_error>

#include "maniscope/error.hpp"

namespace maniscope {

void write_dataset(const Dataset& dataset, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw IoError("cannot create dataset directory '" + dir.string() + "': " +
                  (ec ? ec.message() : "not a directory"));
  }
  if (dataset.queries.size() != dataset.query_ids.size()) {
    throw InvalidArgument("query ids and query vectors differ in count");
  }
  save_embeddings(dataset.corpus, dir / dataset_files::kCorpus,
                  dir / dataset_files::kCorpusIds);

  std::vector<float> query_values;
  for (const auto& q : dataset.queries) {
    if (q.dim() != dataset.corpus.dim()) {
      throw InvalidArgument("query dimension differs from corpus dimension");
    }
    query_values.insert(query_values.end(), q.vector.begin(), q.vector.end());
  }
  if (!query_values.empty()) {
    write_embedding_file(dir / dataset_files::kQueries, dataset.corpus.dim(), query_values);
  }
  write_id_manifest(dir / dataset_files::kQueryIds, dataset.query_ids);
  write_qrels(dir / dataset_files::kQrels, dataset.qrels);
}

Dataset load_dataset(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  for (const char* name : {dataset_files::kCorpus, dataset_files::kCorpusIds,
                           dataset_files::kQueryIds, dataset_files::kQrels}) {
    if (!fs::exists(dir / name)) {
      throw IoError("missing dataset file '" + (dir / name).string() + "'");
    }
  }
  Dataset ds;
  ds.corpus = load_embeddings(dir / dataset_files::kCorpus, dir / dataset_files::kCorpusIds);
  ds.query_ids = read_id_manifest(dir / dataset_files::kQueryIds);
  if (!ds.query_ids.empty()) {
    const auto payload = read_embedding_file(dir / dataset_files::kQueries);
    if (payload.dim != ds.corpus.dim()) {
      throw FormatError("dimension mismatch: queries have " + std::to_string(payload.dim) +
                        ", corpus has " + std::to_string(ds.corpus.dim()));
    }
    if (payload.count != ds.query_ids.size()) {
      throw FormatError("count mismatch: " + std::to_string(ds.query_ids.size()) +
                        " query ids for " + std::to_string(payload.count) + " query vectors");
    }
    for (std::size_t i = 0; i < payload.count; ++i) {
      const auto first = payload.values.begin() + static_cast<std::ptrdiff_t>(i * payload.dim);
      ds.queries.push_back({std::vector<float>(first, first + static_cast<std::ptrdiff_t>(payload.dim))});
    }
  }
  auto qrels = load_qrels(dir / dataset_files::kQrels);
  for (const auto& id : ds.query_ids) {
    auto it = qrels.find(id);
    if (it != qrels.end()) {
      ds.qrels.push_back(std::move(it->second));
    } else {
      ds.qrels.push_back(QrelSet{id, {}});
    }
  }
  return ds;
}

}  // namespace maniscope
