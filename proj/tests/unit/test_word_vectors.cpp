#include <gtest/gtest.h>

#include "expertvote/errors.hpp"
#include "expertvote/word_vectors.hpp"
#include "synthetic.hpp"

namespace expertvote {
namespace {

using testing::TempDir;
using testing::write_file;

TEST(WordVectors, LoadsGloveText) {
  TempDir dir;
  write_file(dir / "w.txt", "cat 1 0\ndog 0 1\n\nbird 0.5 -0.5\n");
  const auto w = load_word_vectors(dir / "w.txt");
  EXPECT_EQ(w.dim, 2u);
  EXPECT_EQ(w.vectors.size(), 3u);
  ASSERT_NE(w.find("bird"), nullptr);
  EXPECT_EQ(*w.find("bird"), (Embedding{0.5, -0.5}));
  EXPECT_EQ(w.find("fish"), nullptr);
}

TEST(WordVectors, RaggedAndNonNumericLinesAreParseErrors) {
  TempDir dir;
  write_file(dir / "r.txt", "cat 1 0\ndog 0 1 2\n");
  try {
    load_word_vectors(dir / "r.txt");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  write_file(dir / "n.txt", "cat 1 x\n");
  EXPECT_THROW(load_word_vectors(dir / "n.txt"), ParseError);
}

TEST(EmbedPooled, DoublePoolsTitleAndSentences) {
  WordVectors w;
  w.dim = 2;
  w.vectors = {{"alpha", {4, 0}}, {"beta", {0, 1}}, {"gamma", {0, 3}}};
  PaperRecord p;
  p.title = "Alpha";
  p.abstract = "beta gamma. unknown words only.";
  // Sentences: [alpha] -> [4,0]; [beta, gamma] -> [0,2]; third has no known token.
  const auto v = embed_pooled(p, w, {});
  ASSERT_TRUE(v);
  EXPECT_NEAR((*v)[0], 2.0, 1e-12);
  EXPECT_NEAR((*v)[1], 1.0, 1e-12);
}

TEST(EmbedPooled, NoKnownTokenGivesNothing) {
  WordVectors w;
  w.dim = 1;
  w.vectors = {{"alpha", {1}}};
  PaperRecord p;
  p.title = "zzz";
  EXPECT_FALSE(embed_pooled(p, w, {}));
  EXPECT_FALSE(embed_pooled_text("", w, {}));
  EXPECT_TRUE(embed_pooled_text("Alpha!", w, {}));
  EXPECT_FALSE(embed_pooled_text("alpha", w, {"alpha"}));
}

}  // namespace
}  // namespace expertvote
