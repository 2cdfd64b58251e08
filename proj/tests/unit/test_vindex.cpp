#include <random>

#include <gtest/gtest.h>

#include "expertvote/errors.hpp"
#include "expertvote/vindex.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

namespace expertvote {
namespace {

using testing::TempDir;

TEST(VectorIndex, BuildCountsAndRejectsZeroVectors) {
  const std::map<std::string, Embedding> v{{"a", {1, 0}}, {"b", {0, 1}}, {"c", {1, 1}}};
  EXPECT_EQ(VectorIndex::build(v, Backend::kExact).count(), 3u);
  try {
    VectorIndex::build({{"z", {0, 0}}, {"a", {1, 0}}}, Backend::kExact);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("z"), std::string::npos);
  }
  EXPECT_THROW(VectorIndex::build({{"a", {1, 0}}, {"b", {1}}}, Backend::kExact), ValidationError);
}

TEST(VectorIndex, SameInputSerializesIdentically) {
  std::mt19937_64 rng(1);
  const auto v = testing::random_embeddings(rng, 100, 8);
  for (auto b : {Backend::kExact, Backend::kHnsw})
    EXPECT_EQ(VectorIndex::build(v, b).serialize(), VectorIndex::build(v, b).serialize());
}

TEST(VectorIndex, WorkedExample) {
  const std::map<std::string, Embedding> v{{"a", {1, 0}}, {"b", {0, 1}}, {"c", {0.6, 0.8}}};
  for (auto backend : {Backend::kExact, Backend::kHnsw}) {
    const auto hits = VectorIndex::build(v, backend).search(Embedding{1, 0}, 3);
    ASSERT_EQ(hits.size(), 3u);
    EXPECT_EQ(hits[0].paper_id, "a");
    EXPECT_NEAR(hits[0].score, 1.0, 1e-12);
    EXPECT_EQ(hits[1].paper_id, "c");
    EXPECT_NEAR(hits[1].score, 0.6, 1e-12);
    EXPECT_EQ(hits[2].paper_id, "b");
    EXPECT_NEAR(hits[2].score, 0.0, 1e-12);
  }
}

TEST(VectorIndex, IdentityQueryAndEdgeCases) {
  std::mt19937_64 rng(2);
  const auto v = testing::random_embeddings(rng, 50, 16);
  const auto index = VectorIndex::build(v, Backend::kExact);
  const auto hits = index.search(v.at("p00007"), 5);
  EXPECT_EQ(hits[0].paper_id, "p00007");
  EXPECT_NEAR(hits[0].score, 1.0, 1e-6);
  EXPECT_TRUE(index.search(v.at("p00007"), 0).empty());
  EXPECT_EQ(index.search(v.at("p00007"), 500).size(), 50u);
  EXPECT_THROW(index.search(Embedding(3, 1.0), 5), ValidationError);
  EXPECT_THROW(index.search(Embedding(16, 0.0), 5), ValidationError);
}

TEST(VectorIndex, EmptyIndexReturnsNothing) {
  const auto index = VectorIndex::build({}, Backend::kExact);
  EXPECT_EQ(index.count(), 0u);
  EXPECT_TRUE(index.search(Embedding{1, 0}, 5).empty());
}

TEST(VectorIndex, ExactMatchesFullScanOracle) {
  std::mt19937_64 rng(3);
  const auto v = testing::random_embeddings(rng, 1000, 64);
  const auto index = VectorIndex::build(v, Backend::kExact);
  for (int q = 0; q < 20; ++q) {
    const auto query = testing::random_vector(rng, 64);
    for (std::size_t n : {1u, 10u, 100u, 2000u}) {
      const auto got = index.search(query, n);
      const auto want = oracle::full_scan(v, query, n);
      ASSERT_EQ(got.size(), want.size());
      for (std::size_t i = 0; i < got.size(); ++i) {
        EXPECT_EQ(got[i].paper_id, want[i].id);
        EXPECT_NEAR(got[i].score, want[i].score, 1e-9);
      }
      EXPECT_EQ(got, exact_oracle(v, query, n));
    }
  }
}

TEST(VectorIndex, ScaleInvariance) {
  std::mt19937_64 rng(4);
  auto v = testing::random_embeddings(rng, 200, 12);
  const auto query = testing::random_vector(rng, 12);
  const auto base = VectorIndex::build(v, Backend::kExact).search(query, 20);
  for (auto& [id, x] : v)
    for (auto& c : x) c *= 7.5;
  auto scaled_query = query;
  for (auto& c : scaled_query) c *= 0.01;
  const auto scaled = VectorIndex::build(v, Backend::kExact).search(scaled_query, 20);
  ASSERT_EQ(base.size(), scaled.size());
  for (std::size_t i = 0; i < base.size(); ++i) {
    EXPECT_EQ(base[i].paper_id, scaled[i].paper_id);
    EXPECT_NEAR(base[i].score, scaled[i].score, 1e-12);
  }
}

TEST(VectorIndex, SaveLoadRoundTripBothBackends) {
  std::mt19937_64 rng(5);
  const auto v = testing::random_embeddings(rng, 300, 10);
  TempDir dir;
  for (auto backend : {Backend::kExact, Backend::kHnsw}) {
    const auto index = VectorIndex::build(v, backend);
    index.save(dir / "i.vidx");
    const auto loaded = VectorIndex::load(dir / "i.vidx");
    EXPECT_EQ(loaded.serialize(), index.serialize());
    EXPECT_EQ(loaded.backend(), backend);
    const auto q = testing::random_vector(rng, 10);
    EXPECT_EQ(loaded.search(q, 10), index.search(q, 10));
  }
}

TEST(VectorIndex, CorruptFilesAreFormatErrors) {
  std::mt19937_64 rng(6);
  TempDir dir;
  const auto bytes = VectorIndex::build(testing::random_embeddings(rng, 20, 4), Backend::kHnsw).serialize();
  const std::string full(bytes.begin(), bytes.end());
  testing::write_file(dir / "trunc.vidx", full.substr(0, full.size() / 2));
  EXPECT_THROW(VectorIndex::load(dir / "trunc.vidx"), FormatError);
  testing::write_file(dir / "magic.vidx", "XXXX" + full.substr(4));
  EXPECT_THROW(VectorIndex::load(dir / "magic.vidx"), FormatError);
  testing::write_file(dir / "trail.vidx", full + "x");
  EXPECT_THROW(VectorIndex::load(dir / "trail.vidx"), FormatError);
}

TEST(VectorIndex, ParseBackend) {
  EXPECT_EQ(parse_backend("exact"), Backend::kExact);
  EXPECT_EQ(parse_backend("hnsw"), Backend::kHnsw);
  EXPECT_THROW(parse_backend("faiss"), ArgumentError);
}

}  // namespace
}  // namespace expertvote
