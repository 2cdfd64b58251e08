#include <gtest/gtest.h>

#include "expertvote/corpus.hpp"
#include "expertvote/errors.hpp"
#include "synthetic.hpp"

namespace expertvote {
namespace {

using testing::TempDir;
using testing::write_file;
const std::filesystem::path kFixtures = EXPERTVOTE_FIXTURES;

TEST(LoadCorpus, TwoPaperThreeAuthorFixture) {
  LoadReport report;
  const auto c = load_corpus(kFixtures / "small/papers.jsonl", kFixtures / "small/authors.jsonl", &report);
  ASSERT_EQ(c.papers.size(), 2u);
  ASSERT_EQ(c.authors.size(), 3u);
  // Links: A1->P1, A2->P1, A3->P2; aL = 3 links / 3 authors.
  EXPECT_DOUBLE_EQ(c.avg_publications, 1.0);
  EXPECT_EQ(c.authors.at("A1").paper_ids, std::vector<std::string>{"P1"});
  EXPECT_EQ(c.authors.at("A3").paper_ids, std::vector<std::string>{"P2"});
  // Declared n_pubs 5 for A3 disagrees with the single linked paper.
  EXPECT_EQ(c.authors.at("A3").n_pubs, 1);
  EXPECT_EQ(report.n_pubs_mismatches, 1u);
  // Self reference dropped, tags normalized, sorted and deduplicated.
  EXPECT_EQ(c.papers.at("P1").references, std::vector<std::string>{"P2"});
  EXPECT_EQ(report.dropped_self_references, 1u);
  EXPECT_EQ(c.authors.at("A1").tags, (std::vector<std::string>{"cluster analysis", "machine learning"}));
}

TEST(LoadCorpus, EveryLinkHasAReverseLink) {
  const auto c = load_corpus(kFixtures / "small/papers.jsonl", kFixtures / "small/authors.jsonl");
  for (const auto& [pid, paper] : c.papers)
    for (const auto& slot : paper.authors) {
      const auto& ids = c.authors.at(slot.author_id).paper_ids;
      EXPECT_NE(std::find(ids.begin(), ids.end(), pid), ids.end());
    }
  for (const auto& [aid, author] : c.authors)
    for (const auto& pid : author.paper_ids) {
      const auto& slots = c.papers.at(pid).authors;
      EXPECT_TRUE(std::any_of(slots.begin(), slots.end(), [&](const auto& s) { return s.author_id == aid; }));
    }
}

TEST(LoadCorpus, EmptyFilesGiveEmptyCorpus) {
  TempDir dir;
  write_file(dir / "p.jsonl", "");
  write_file(dir / "a.jsonl", "");
  const auto c = load_corpus(dir / "p.jsonl", dir / "a.jsonl");
  EXPECT_TRUE(c.papers.empty());
  EXPECT_TRUE(c.authors.empty());
  EXPECT_EQ(c.avg_publications, 0.0);
}

TEST(LoadCorpus, UnknownAuthorIsDroppedAndPositionsRenumbered) {
  LoadReport report;
  const auto c = load_corpus(kFixtures / "dangling/papers.jsonl", kFixtures / "dangling/authors.jsonl", &report);
  EXPECT_EQ(report.dropped_author_links, 1u);
  ASSERT_EQ(c.papers.at("P1").authors.size(), 1u);
  EXPECT_EQ(c.papers.at("P1").authors[0], (AuthorSlot{"A1", 1}));
}

TEST(LoadCorpus, MalformedLineCarriesLineNumber) {
  TempDir dir;
  write_file(dir / "a.jsonl", "{\"id\": \"A1\"}\n");
  write_file(dir / "p.jsonl", "{\"id\": \"P1\", \"authors\": []}\n\n{not json\n");
  try {
    load_corpus(dir / "p.jsonl", dir / "a.jsonl");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(LoadCorpus, DuplicatePaperIdIsRejected) {
  TempDir dir;
  write_file(dir / "a.jsonl", "");
  write_file(dir / "p.jsonl", "{\"id\": \"P1\"}\n{\"id\": \"P1\"}\n");
  EXPECT_THROW(load_corpus(dir / "p.jsonl", dir / "a.jsonl"), ValidationError);
}

TEST(LoadCorpus, BrokenAuthorPositionsAreRejected) {
  TempDir dir;
  write_file(dir / "a.jsonl", "{\"id\": \"A1\"}\n{\"id\": \"A2\"}\n");
  write_file(dir / "p.jsonl",
             "{\"id\": \"P1\", \"authors\": [{\"id\": \"A1\", \"position\": 1}, {\"id\": \"A2\", \"position\": 3}]}\n");
  EXPECT_THROW(load_corpus(dir / "p.jsonl", dir / "a.jsonl"), ValidationError);
  write_file(dir / "p.jsonl",
             "{\"id\": \"P1\", \"authors\": [{\"id\": \"A1\", \"position\": 1}, {\"id\": \"A1\", \"position\": 2}]}\n");
  EXPECT_THROW(load_corpus(dir / "p.jsonl", dir / "a.jsonl"), ValidationError);
}

TEST(LoadCorpus, MissingFileThrows) {
  EXPECT_THROW(load_corpus("/nonexistent/p.jsonl", "/nonexistent/a.jsonl"), std::runtime_error);
}

TEST(SaveCorpus, RoundTripPreservesEverything) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    testing::TopicCorpusSpec spec;
    spec.seed = seed;
    spec.topics = 3;
    const auto original = testing::make_topic_corpus(spec);
    TempDir dir;
    const auto [papers, authors] = testing::write_corpus(original, dir.path());
    LoadReport report;
    const auto reloaded = load_corpus(papers, authors, &report);
    EXPECT_EQ(reloaded, original);
    EXPECT_EQ(report.dropped_author_links, 0u);
    EXPECT_EQ(report.n_pubs_mismatches, 0u);
  }
}

}  // namespace
}  // namespace expertvote
