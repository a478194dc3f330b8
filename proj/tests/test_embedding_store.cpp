#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>

#include "maniscope/embedding_store.hpp"
#include "maniscope/error.hpp"
#include "maniscope/telescope.hpp"
#include "test_util.hpp"

namespace maniscope {
namespace {

namespace fs = std::filesystem;

class EmbeddingFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("maniscope_emb_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path dir_;
};

std::string read_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

TEST_F(EmbeddingFiles, RoundTripThreeByFour) {
  const std::vector<float> values = {1, 2, 3, 4, 0.5f, -0.25f, 8, 1e-3f, -7, 6, 5, 4};
  const EmbeddingMatrix m(4, values, {"d0", "d1", "d2"});
  save_embeddings(m, dir_ / "x.emb", dir_ / "ids.txt");

  const auto loaded = load_embeddings(dir_ / "x.emb", dir_ / "ids.txt");
  EXPECT_EQ(loaded.dim(), 4u);
  EXPECT_EQ(loaded.count(), 3u);
  EXPECT_EQ(loaded.values(), values);
  EXPECT_EQ(loaded.ids(), (std::vector<std::string>{"d0", "d1", "d2"}));
  EXPECT_FALSE(loaded.normalized());

  // Header: magic, version 1, D=4, N=3, then 48 payload bytes.
  const auto bytes = read_bytes(dir_ / "x.emb");
  ASSERT_EQ(bytes.size(), kEmbeddingHeaderBytes + 12 * 4);
  EXPECT_EQ(bytes.substr(0, 4), "MSEB");
  EXPECT_EQ(static_cast<unsigned char>(bytes[4]), 1);
  EXPECT_EQ(static_cast<unsigned char>(bytes[8]), 4);
  EXPECT_EQ(static_cast<unsigned char>(bytes[12]), 3);
}

TEST_F(EmbeddingFiles, PayloadRoundTripIsBitExact) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<float> u(-1e3f, 1e3f);
  std::vector<float> values(37 * 5);
  for (auto& v : values) v = u(rng);
  values[3] = std::numeric_limits<float>::denorm_min();
  values[4] = -0.0f;
  write_embedding_file(dir_ / "a.emb", 5, values);
  const auto payload = read_embedding_file(dir_ / "a.emb");
  write_embedding_file(dir_ / "b.emb", payload.dim, payload.values);
  EXPECT_EQ(read_bytes(dir_ / "a.emb"), read_bytes(dir_ / "b.emb"));
  EXPECT_TRUE(std::signbit(payload.values[4]));
}

TEST_F(EmbeddingFiles, CountMismatchIsRejected) {
  write_embedding_file(dir_ / "x.emb", 2, std::vector<float>{1, 2, 3, 4});
  // Patch the header count from 2 to 3.
  std::fstream f(dir_ / "x.emb", std::ios::in | std::ios::out | std::ios::binary);
  f.seekp(12);
  const char three = 3;
  f.write(&three, 1);
  f.close();
  try {
    read_embedding_file(dir_ / "x.emb");
    FAIL() << "expected an error";
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("count mismatch"), std::string::npos);
  }
}

TEST_F(EmbeddingFiles, MalformedHeader) {
  {
    std::ofstream out(dir_ / "bad.emb", std::ios::binary);
    out << "NOPE0000000000000000";
  }
  EXPECT_THROW(read_embedding_file(dir_ / "bad.emb"), FormatError);
  {
    std::ofstream out(dir_ / "short.emb", std::ios::binary);
    out << "MSEB";
  }
  EXPECT_THROW(read_embedding_file(dir_ / "short.emb"), FormatError);
  EXPECT_THROW(read_embedding_file(dir_ / "missing.emb"), IoError);
}

TEST_F(EmbeddingFiles, ManifestMustMatchHeaderCount) {
  write_embedding_file(dir_ / "x.emb", 2, std::vector<float>{1, 2, 3, 4});
  write_id_manifest(dir_ / "ids.txt", std::vector<std::string>{"only-one"});
  EXPECT_THROW(load_embeddings(dir_ / "x.emb", dir_ / "ids.txt"), FormatError);
}

TEST_F(EmbeddingFiles, DuplicateIdIsRejected) {
  write_embedding_file(dir_ / "x.emb", 2, std::vector<float>{1, 2, 3, 4});
  write_id_manifest(dir_ / "ids.txt", std::vector<std::string>{"doc1", "doc1"});
  try {
    load_embeddings(dir_ / "x.emb", dir_ / "ids.txt");
    FAIL() << "expected an error";
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("duplicate id"), std::string::npos);
  }
}

TEST_F(EmbeddingFiles, NonFiniteValueIsRejected) {
  write_embedding_file(dir_ / "x.emb", 2,
                       std::vector<float>{1, std::numeric_limits<float>::quiet_NaN(), 3, 4});
  write_id_manifest(dir_ / "ids.txt", std::vector<std::string>{"a", "b"});
  EXPECT_THROW(load_embeddings(dir_ / "x.emb", dir_ / "ids.txt"), InvalidArgument);
}

TEST(EmbeddingMatrix, NormalizedFlagIsChecked) {
  EXPECT_THROW(EmbeddingMatrix(2, {3, 4}, {"a"}, true), InvalidArgument);
  EXPECT_NO_THROW(EmbeddingMatrix(2, {0.6f, 0.8f}, {"a"}, true));
}

TEST(Normalize, ScalesRowsToUnitNorm) {
  const EmbeddingMatrix m(2, {3, 4, 1, 0}, {"a", "b"});
  const auto n = normalize(m);
  EXPECT_TRUE(n.normalized());
  EXPECT_NEAR(n.row(0)[0], 0.6, 1e-7);
  EXPECT_NEAR(n.row(0)[1], 0.8, 1e-7);
  EXPECT_EQ(n.row(1)[0], 1.0f);
  EXPECT_EQ(n.row(1)[1], 0.0f);
}

TEST(Normalize, ZeroRowNamesTheId) {
  const EmbeddingMatrix m(2, {1, 1, 0, 0}, {"fine", "empty-doc"});
  try {
    normalize(m);
    FAIL() << "expected an error";
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("zero norm"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("empty-doc"), std::string::npos);
  }
}

TEST(Normalize, IdempotentAndPreservesCosines) {
  std::mt19937_64 rng(5);
  std::normal_distribution<float> normal(0.0f, 3.0f);
  std::vector<float> values(20 * 16);
  for (auto& v : values) v = normal(rng);
  std::vector<std::string> ids;
  for (int i = 0; i < 20; ++i) ids.push_back(std::to_string(i));
  const EmbeddingMatrix m(16, values, ids);
  const auto once = normalize(m);
  const auto twice = normalize(once);
  for (std::size_t i = 0; i < values.size(); ++i) {
    EXPECT_NEAR(once.values()[i], twice.values()[i], 1e-6);
  }
  for (std::size_t i = 0; i < 20; ++i) {
    EXPECT_NEAR(norm(once.row(i)), 1.0, 1e-6);
    for (std::size_t j = 0; j < 20; ++j) {
      EXPECT_NEAR(cosine_similarity(m.row(i), m.row(j)),
                  cosine_similarity(once.row(i), once.row(j)), 1e-6);
    }
  }
}

TEST(CosineSimilarity, HandValues) {
  const std::vector<float> x{1, 0}, y{0, 1}, xy{1, 1};
  EXPECT_EQ(cosine_similarity(x, x), 1.0);
  EXPECT_EQ(cosine_similarity(x, y), 0.0);
  EXPECT_NEAR(cosine_similarity(x, xy), 0.70710678, 1e-6);
  EXPECT_EQ(cosine_similarity(x, xy), cosine_similarity(xy, x));
}

TEST(CosineSimilarity, Errors) {
  const std::vector<float> a{1, 0}, b{1, 0, 0}, z{0, 0};
  EXPECT_THROW(cosine_similarity(a, b), InvalidArgument);
  EXPECT_THROW(cosine_similarity(a, z), InvalidArgument);
}

TEST(CosineSimilarity, ClampedForParallelVectors) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 200; ++t) {
    auto v = testing::random_unit_vectors(rng, 1, 384);
    std::vector<float> scaled(v);
    for (auto& x : scaled) x *= 3.7f;
    const double c = cosine_similarity(v, scaled);
    EXPECT_LE(c, 1.0);
    EXPECT_GE(c, -1.0);
  }
}

TEST(PairwiseSimilarities, SingleAndOrthogonal) {
  const std::vector<float> one{0.3f, 0.4f};
  const auto s1 = pairwise_similarities(one, 2);
  ASSERT_EQ(s1.size(), 1u);
  EXPECT_EQ(s1(0, 0), 1.0);

  const std::vector<float> ortho{1, 0, 0, 1};
  const auto s2 = pairwise_similarities(ortho, 2);
  EXPECT_EQ(s2(0, 0), 1.0);
  EXPECT_EQ(s2(1, 1), 1.0);
  EXPECT_EQ(s2(0, 1), 0.0);
  EXPECT_EQ(s2(1, 0), 0.0);
}

TEST(PairwiseSimilarities, MatchesElementwiseCosineLoop) {
  std::mt19937_64 rng(17);
  for (const std::size_t m : {3u, 10u, 57u}) {
    const auto pool = testing::random_pool(rng, m, 24);
    const auto sims = pairwise_similarities(pool);
    for (std::size_t i = 0; i < m; ++i) {
      EXPECT_EQ(sims(i, i), 1.0);
      for (std::size_t j = 0; j < m; ++j) {
        EXPECT_EQ(sims(i, j), sims(j, i));
        EXPECT_GE(sims(i, j), -1.0);
        EXPECT_LE(sims(i, j), 1.0);
        if (i != j) {
          EXPECT_NEAR(sims(i, j), cosine_similarity(pool.vector(i), pool.vector(j)), 1e-6);
        }
      }
    }
  }
}

}  // namespace
}  // namespace maniscope
