#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "expertvote/errors.hpp"
#include "expertvote/metrics.hpp"
#include "oracles.hpp"

namespace expertvote {
namespace {

std::vector<bool> b(std::initializer_list<int> xs) {
  std::vector<bool> out;
  for (int x : xs) out.push_back(x != 0);
  return out;
}

TEST(Metrics, ReciprocalRank) {
  EXPECT_NEAR(reciprocal_rank(b({0, 0, 1})), 1.0 / 3.0, 1e-15);
  EXPECT_EQ(reciprocal_rank(b({1, 0})), 1.0);
  EXPECT_EQ(reciprocal_rank(b({0, 0, 0})), 0.0);
  EXPECT_EQ(reciprocal_rank({}), 0.0);
}

TEST(Metrics, PrecisionAtN) {
  EXPECT_DOUBLE_EQ(precision_at_n(b({1, 0, 1, 0, 0}), 5), 0.4);
  EXPECT_DOUBLE_EQ(precision_at_n(b({1, 1}), 5), 0.4);
  EXPECT_DOUBLE_EQ(precision_at_n(std::vector<bool>(10, true), 10), 1.0);
  EXPECT_THROW(precision_at_n(b({1}), 0), ArgumentError);
}

TEST(Metrics, AveragePrecisionAtN) {
  EXPECT_NEAR(average_precision_at_n(b({1, 0, 1, 0}), 10), (1.0 + 2.0 / 3.0) / 2.0, 1e-15);
  EXPECT_NEAR(average_precision_at_n(b({1, 0, 1, 0}), 10), 0.8333, 1e-4);
  EXPECT_EQ(average_precision_at_n(std::vector<bool>(10, false), 10), 0.0);
  EXPECT_EQ(average_precision_at_n(b({1, 1, 1}), 3), 1.0);
  EXPECT_THROW(average_precision_at_n(b({1}), -1), ArgumentError);
  // Relevant entries past the cutoff are ignored.
  EXPECT_EQ(average_precision_at_n(b({1, 0, 0, 1}), 2), 1.0);
}

TEST(Metrics, Ndcg) {
  EXPECT_NEAR(ndcg_at_n({3, 2, 0}, dcg_at_n({3, 2, 0}, 10), 10), 1.0, 1e-15);
  EXPECT_NEAR(dcg_at_n({0, 3}, 10), 7.0 / std::log2(3.0), 1e-12);
  EXPECT_NEAR(ndcg_at_n({0, 3}, dcg_at_n({3, 0}, 10), 10), 0.6309, 1e-4);
  EXPECT_EQ(ndcg_at_n({0, 0, 0}, 7.0, 10), 0.0);
  EXPECT_THROW(ndcg_at_n({1}, 0.0, 10), ArgumentError);
  EXPECT_THROW(ndcg_at_n({1}, 1.0, 0), ArgumentError);
}

TEST(Metrics, AgreeWithReferenceOnRandomSequences) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t len = rng() % 15;
    std::vector<int> grades(len), rel(len);
    std::vector<bool> relb(len);
    for (std::size_t i = 0; i < len; ++i) {
      grades[i] = static_cast<int>(rng() % 4);
      rel[i] = grades[i] > 0;
      relb[i] = rel[i] != 0;
    }
    auto ideal = grades;
    ideal.push_back(3);  // ensure idcg > 0
    std::sort(ideal.rbegin(), ideal.rend());
    for (int n : {1, 5, 10}) {
      EXPECT_NEAR(precision_at_n(relb, n), oracle::precision_at(rel, n), 1e-12);
      EXPECT_NEAR(average_precision_at_n(relb, n), oracle::average_precision_at(rel, n), 1e-12);
      EXPECT_NEAR(ndcg_at_n(grades, dcg_at_n(ideal, n), n), oracle::ndcg_at(grades, ideal, n), 1e-12);
      const double p = precision_at_n(relb, n);
      EXPECT_GE(p, 0.0);
      EXPECT_LE(p, 1.0);
    }
    EXPECT_NEAR(reciprocal_rank(relb), oracle::reciprocal_rank(rel), 1e-12);
  }
}

}  // namespace
}  // namespace expertvote
