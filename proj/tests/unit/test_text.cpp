#include <fstream>
#include <random>

#include <gtest/gtest.h>
#include <json.hpp>

#include "expertvote/corpus.hpp"
#include "expertvote/text.hpp"
#include "synthetic.hpp"

namespace expertvote {
namespace {

const std::filesystem::path kGolden = EXPERTVOTE_GOLDEN;

TEST(CleanText, DropsUrlsAndStopwords) {
  EXPECT_EQ(clean_text("Read the paper at https://arxiv.org/abs/1234", {"the", "at"}), "read paper");
}

TEST(CleanText, DropsEmailAndCollapsesWhitespace) {
  EXPECT_EQ(clean_text("Contact: john@example.com   now", {}), "contact: now");
}

TEST(CleanText, StripsDiacritics) { EXPECT_EQ(clean_text("naïve   Bayes", {}), "naive bayes"); }

TEST(CleanText, EmptyInput) {
  EXPECT_EQ(clean_text("", {}), "");
  EXPECT_EQ(clean_text(" \t\n ", {"a"}), "");
}

TEST(CleanText, WwwUrlsAndCompatibilityForms) {
  EXPECT_EQ(clean_text("see www.example.org today", {}), "see today");
  EXPECT_EQ(clean_text("ﬁnite Ｆｕｌｌwidth", {}), "finite fullwidth");
}

TEST(CleanText, StopwordMatchesIgnorePunctuation) {
  EXPECT_EQ(clean_text("The model, the data.", {"the"}), "model, data.");
}

TEST(CleanText, IsIdempotentOnRandomInput) {
  const std::vector<std::string> pieces{"Hello", "WORLD", "naïve", "Café", "http://x.y/z", "a@b.co", "  ", "\t",
                                        "the", "Über", "ﬁ", "data.", "(see)", "www.site.com", "Ω", "x-y", "\n"};
  const StopwordSet stop{"the", "and"};
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    std::string raw;
    const int n = std::uniform_int_distribution<int>(0, 12)(rng);
    for (int i = 0; i < n; ++i) raw += pieces[rng() % pieces.size()] + (rng() % 2 ? " " : "");
    const auto once = clean_text(raw, stop);
    EXPECT_EQ(clean_text(once, stop), once) << "input: " << raw;
  }
}

TEST(SplitSentences, Examples) {
  EXPECT_EQ(split_sentences("We do X. We do Y."), (std::vector<std::string>{"We do X.", "We do Y."}));
  EXPECT_EQ(split_sentences("no terminator here"), std::vector<std::string>{"no terminator here"});
  EXPECT_TRUE(split_sentences("").empty());
}

TEST(SplitSentences, GoldenFile) {
  std::ifstream in(kGolden / "split_sentences.jsonl");
  ASSERT_TRUE(in) << "golden file missing";
  std::string line;
  int cases = 0;
  while (std::getline(in, line)) {
    const auto obj = nlohmann::json::parse(line);
    const auto text = obj.at("text").get<std::string>();
    EXPECT_EQ(split_sentences(text), obj.at("sentences").get<std::vector<std::string>>()) << "text: " << text;
    ++cases;
  }
  EXPECT_EQ(cases, 50);
}

TEST(Tokenize, TrimsPunctuation) {
  EXPECT_EQ(tokenize("contact: now (really)."), (std::vector<std::string>{"contact", "now", "really"}));
  EXPECT_EQ(tokenize("x-ray 3.5"), (std::vector<std::string>{"x-ray", "3.5"}));
  EXPECT_TRUE(tokenize("  ... ").empty());
}

TEST(NormalizeTag, LowercasesAndCollapses) {
  EXPECT_EQ(normalize_tag("  Game   Theory "), "game theory");
  EXPECT_EQ(normalize_tag(""), "");
}

TEST(Stopwords, RoundTripAndCorpusTopN) {
  testing::TempDir dir;
  const StopwordSet words{"a", "of", "the"};
  save_stopwords(words, dir / "s.txt");
  EXPECT_EQ(load_stopwords(dir / "s.txt"), words);

  Corpus c;
  c.papers["p1"] = PaperRecord{"p1", "the cat", "the dog. a cat.", {}, {}, 0};
  c.papers["p2"] = PaperRecord{"p2", "the bird", "", {}, {}, 0};
  // the:3, cat:2, then a/bird/dog tie at 1 broken by token.
  EXPECT_EQ(corpus_stopwords(c, 3), (StopwordSet{"a", "cat", "the"}));
  EXPECT_EQ(corpus_stopwords(c, 0), StopwordSet{});
}

}  // namespace
}  // namespace expertvote
