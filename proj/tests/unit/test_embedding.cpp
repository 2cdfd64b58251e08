#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "expertvote/embedding.hpp"
#include "expertvote/errors.hpp"

namespace expertvote {
namespace {

TEST(Embedding, DotNormCosine) {
  const Embedding a{3, 4};
  const Embedding b{4, -3};
  EXPECT_DOUBLE_EQ(dot(a, b), 0.0);
  EXPECT_DOUBLE_EQ(l2_norm(a), 5.0);
  EXPECT_DOUBLE_EQ(cosine(a, a), 1.0);
  EXPECT_DOUBLE_EQ(cosine(a, Embedding{0, 0}), 0.0);
}

TEST(Embedding, NormalizedRejectsZeroAndNonFinite) {
  const auto n = normalized(Embedding{0, 2});
  EXPECT_DOUBLE_EQ(n[1], 1.0);
  EXPECT_THROW(normalized(Embedding{0, 0}), ValidationError);
  EXPECT_THROW(normalized(Embedding{std::numeric_limits<double>::quiet_NaN(), 1}), ValidationError);
}

TEST(Embedding, MeanOf) {
  const std::vector<Embedding> vs{{2, 0}, {0, 2}, {1, 1}};
  EXPECT_EQ(mean_of(vs), (Embedding{1, 1}));
  EXPECT_THROW(mean_of(std::vector<Embedding>{}), ValidationError);
  EXPECT_THROW(mean_of(std::vector<Embedding>{{1, 0}, {1}}), ValidationError);
}

TEST(Embedding, RequireDim) {
  EXPECT_NO_THROW(require_dim(Embedding{1, 2}, 2, "x"));
  EXPECT_THROW(require_dim(Embedding{1, 2}, 3, "x"), ValidationError);
}

}  // namespace
}  // namespace expertvote
