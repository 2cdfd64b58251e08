#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "expertvote/errors.hpp"
#include "expertvote/voting.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

namespace expertvote {
namespace {

WeightingStrategy strategy(WeightingKind kind) {
  WeightingStrategy s;
  s.kind = kind;
  return s;
}

Corpus corpus_of(const std::vector<std::pair<std::string, std::vector<std::string>>>& papers) {
  Corpus c;
  for (const auto& [pid, authors] : papers) {
    PaperRecord p;
    p.paper_id = pid;
    for (std::size_t i = 0; i < authors.size(); ++i) {
      p.authors.push_back({authors[i], static_cast<int>(i + 1)});
      c.authors[authors[i]].author_id = authors[i];
    }
    c.papers[pid] = p;
  }
  link_corpus(c);
  return c;
}

TEST(AuthorWeight, Examples) {
  EXPECT_DOUBLE_EQ(author_weight(3, 5, strategy(WeightingKind::kDescending)), 0.6);
  EXPECT_DOUBLE_EQ(author_weight(4, 4, strategy(WeightingKind::kParabolic)), 1.0);
  EXPECT_DOUBLE_EQ(author_weight(2, 4, strategy(WeightingKind::kUniform)), 0.25);
  EXPECT_DOUBLE_EQ(author_weight(7, 9, strategy(WeightingKind::kDescending)), 0.2);
  EXPECT_DOUBLE_EQ(author_weight(5, 9, strategy(WeightingKind::kBinary)), 1.0);
  EXPECT_DOUBLE_EQ(author_weight(1, 3, strategy(WeightingKind::kParabolic)), 1.0);
  EXPECT_DOUBLE_EQ(author_weight(2, 3, strategy(WeightingKind::kParabolic)), 0.8);
}

TEST(AuthorWeight, OutOfRangePositionsAndConfig) {
  EXPECT_THROW(author_weight(0, 3, strategy(WeightingKind::kBinary)), ArgumentError);
  EXPECT_THROW(author_weight(4, 3, strategy(WeightingKind::kBinary)), ArgumentError);
  WeightingStrategy bad;
  bad.floor = 0.0;
  EXPECT_THROW(bad.validate(), ArgumentError);
  EXPECT_NO_THROW(WeightingStrategy{}.validate());
}

TEST(AuthorWeight, MatchesLiteralRulesEverywhere) {
  for (const auto* name : {"binary", "uniform", "descending", "parabolic"})
    for (int n = 1; n <= 12; ++n)
      for (int p = 1; p <= n; ++p) {
        const double w = author_weight(p, n, strategy(parse_weighting(name)));
        EXPECT_DOUBLE_EQ(w, oracle::weight(name, p, n)) << name << " " << p << "/" << n;
        EXPECT_GT(w, 0.0);
        EXPECT_LE(w, 1.0);
      }
}

TEST(ExpCombSum, Examples) {
  const auto binary = strategy(WeightingKind::kBinary);
  auto c = corpus_of({{"d1", {"A"}}, {"d2", {"A"}}});
  std::vector<ScoredDocument> one{{"d1", 0.0}};
  auto r = exp_comb_sum(one, c, binary);
  ASSERT_EQ(r.entries.size(), 1u);
  EXPECT_DOUBLE_EQ(r.entries[0].score, 1.0);

  std::vector<ScoredDocument> two{{"d1", 0.0}, {"d2", 0.0}};
  EXPECT_DOUBLE_EQ(exp_comb_sum(two, c, binary).entries[0].score, 2.0);

  auto c3 = corpus_of({{"d", {"X", "Y", "Z"}}});
  std::vector<ScoredDocument> d{{"d", 0.0}};
  const auto r3 = exp_comb_sum(d, c3, strategy(WeightingKind::kDescending));
  for (const auto& e : r3.entries)
    if (e.author_id == "Y") {
      EXPECT_DOUBLE_EQ(e.score, 0.8);
    }

  auto c4 = corpus_of({{"d1", {"A", "B"}}, {"d2", {"A"}}});
  std::vector<ScoredDocument> docs{{"d1", 0.5}, {"d2", 0.2}};
  const auto r4 = exp_comb_sum(docs, c4, binary);
  ASSERT_EQ(r4.entries.size(), 2u);
  EXPECT_EQ(r4.entries[0].author_id, "A");
  EXPECT_NEAR(r4.entries[0].score, 2.8701, 1e-4);
  EXPECT_NEAR(r4.entries[0].score, std::exp(0.5) + std::exp(0.2), 1e-12);
  EXPECT_EQ(r4.entries[1].author_id, "B");
  EXPECT_NEAR(r4.entries[1].score, 1.6487, 1e-4);
  // Evidence lists the voting papers with their scores and weights.
  ASSERT_EQ(r4.entries[0].evidence.size(), 2u);
  EXPECT_EQ(r4.entries[0].evidence[0], (Evidence{"d1", 0.5, 1.0}));
}

TEST(ExpCombSum, UnknownPaperAndEmptyList) {
  const auto c = corpus_of({{"d1", {"A"}}});
  std::vector<ScoredDocument> bad{{"nope", 0.3}};
  EXPECT_THROW(exp_comb_sum(bad, c, {}), ValidationError);
  EXPECT_TRUE(exp_comb_sum(std::vector<ScoredDocument>{}, c, {}).entries.empty());
}

TEST(ExpCombSum, InvariantsOnRandomFixtures) {
  std::mt19937_64 rng(9);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto f = testing::make_voting_fixture(seed);
    std::vector<ScoredDocument> docs;
    for (const auto& [id, v] : f.vectors)
      if (rng() % 2) docs.push_back({id, std::uniform_real_distribution<double>(-1, 1)(rng)});
    auto shuffled = docs;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (auto kind : {WeightingKind::kBinary, WeightingKind::kUniform, WeightingKind::kDescending,
                      WeightingKind::kParabolic}) {
      const auto a = exp_comb_sum(docs, f.corpus, strategy(kind));
      // Order of the retrieved list does not matter.
      EXPECT_EQ(a, exp_comb_sum(shuffled, f.corpus, strategy(kind)));
      // Sorted, unique, positive; score equals the evidence sum.
      for (std::size_t i = 0; i < a.entries.size(); ++i) {
        const auto& e = a.entries[i];
        EXPECT_GT(e.score, 0.0);
        double sum = 0;
        for (const auto& ev : e.evidence) sum += ev.weight * std::exp(ev.doc_score);
        EXPECT_NEAR(e.score, sum, 1e-12);
        if (i > 0) {
          const auto& prev = a.entries[i - 1];
          EXPECT_TRUE(prev.score > e.score || (prev.score == e.score && prev.author_id < e.author_id));
        }
      }
      // Binary dominates every other weighting per author.
      if (kind != WeightingKind::kBinary) {
        const auto b = exp_comb_sum(docs, f.corpus, strategy(WeightingKind::kBinary));
        for (const auto& e : a.entries)
          for (const auto& be : b.entries)
            if (be.author_id == e.author_id) {
              EXPECT_LE(e.score, be.score + 1e-12);
            }
      }
    }
  }
}

TEST(NormalizeScore, Examples) {
  NormalizationParams p{true, 1.0, 0.0, 10.0};
  EXPECT_DOUBLE_EQ(normalize_score(2.0, 10, p), 2.0);
  p.alpha = 1000;
  EXPECT_NEAR(normalize_score(1.0, 100, p), std::log2(101.0), 1e-12);
  EXPECT_NEAR(normalize_score(1.0, 100, p), 6.6582, 1e-4);
  p.alpha = 1;
  EXPECT_NEAR(normalize_score(1.0, 1000, p), 0.01435, 1e-5);
}

TEST(NormalizeScore, Errors) {
  NormalizationParams p{true, 1.0, 0.0, 10.0};
  EXPECT_THROW(normalize_score(1.0, 0, p), DomainError);
  p.alpha = 0;
  EXPECT_THROW(normalize_score(1.0, 3, p), ArgumentError);
  p.alpha = 1;
  p.avg_publications = 0;
  EXPECT_THROW(normalize_score(1.0, 3, p), DomainError);
  p.avg_publications = 2;
  p.beta = 5;
  EXPECT_NO_THROW(normalize_score(1.0, 0, p));
}

TEST(NormalizeScore, MonotoneInProfileLength) {
  NormalizationParams p{true, 1.0, 0.5, 7.3};
  double prev = 1e300;
  for (int len = 1; len < 500; ++len) {
    const double v = normalize_score(3.0, len, p);
    EXPECT_LT(v, prev);
    EXPECT_GT(v, 0.0);
    prev = v;
  }
}

TEST(RankExperts, EmptyIndexAndSingleAuthor) {
  const Corpus empty;
  const auto index = VectorIndex::build({}, Backend::kExact);
  EXPECT_TRUE(rank_experts(Embedding{1, 0}, index, empty, {}, {}, 10, 10).entries.empty());

  const auto c = corpus_of({{"d", {"solo"}}});
  const auto one = VectorIndex::build({{"d", {0.3, 0.4}}}, Backend::kExact);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 10; ++i) {
    const auto r = rank_experts(testing::random_vector(rng, 2), one, c, {}, {}, 10, 10);
    ASSERT_EQ(r.entries.size(), 1u);
    EXPECT_EQ(r.entries[0].author_id, "solo");
  }
}

TEST(RankExperts, MatchesBruteForceOracle) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto f = testing::make_voting_fixture(seed);
    const auto index = VectorIndex::build(f.vectors, Backend::kExact);
    std::mt19937_64 rng(seed + 100);
    for (const auto* name : {"binary", "uniform", "descending", "parabolic"}) {
      for (std::size_t n_docs : {1u, 5u, 20u}) {
        const auto q = testing::random_vector(rng, 8);
        const auto got = rank_experts(q, index, f.corpus, strategy(parse_weighting(name)), {}, n_docs, 8);
        const auto want = oracle::vote(f.vectors, f.corpus, q, name, n_docs, 8);
        ASSERT_EQ(got.entries.size(), want.size());
        for (std::size_t i = 0; i < want.size(); ++i) {
          EXPECT_EQ(got.entries[i].author_id, want[i].id);
          EXPECT_NEAR(got.entries[i].score, want[i].score, 1e-9);
        }
      }
    }
  }
}

TEST(RankExperts, NormalizationFavoursShortProfiles) {
  // Both authors collect identical raw votes from one paper each; B also has
  // many low-similarity papers that are never retrieved.
  Corpus c;
  std::map<std::string, Embedding> vectors;
  c.authors["A"].author_id = "A";
  c.authors["B"].author_id = "B";
  c.papers["a0"] = PaperRecord{"a0", "", "", {{"A", 1}}, {}, 0};
  vectors["a0"] = {1, 0, 0};
  c.papers["b0"] = PaperRecord{"b0", "", "", {{"B", 1}}, {}, 0};
  vectors["b0"] = {1, 0, 0};
  for (int i = 1; i < 20; ++i) {
    const auto id = "b" + std::to_string(i);
    c.papers[id] = PaperRecord{id, "", "", {{"B", 1}}, {}, 0};
    vectors[id] = {0, 1, 0};
  }
  link_corpus(c);
  const auto index = VectorIndex::build(vectors, Backend::kExact);
  NormalizationParams off;
  const auto raw = rank_experts(Embedding{1, 0, 0}, index, c, {}, off, 2, 2);
  EXPECT_EQ(raw.entries[0].score, raw.entries[1].score);
  NormalizationParams on{true, 1.0, 0.0, c.avg_publications};
  const auto norm = rank_experts(Embedding{1, 0, 0}, index, c, {}, on, 2, 2);
  EXPECT_EQ(norm.entries[0].author_id, "A");
  EXPECT_GT(norm.entries[0].score, norm.entries[1].score);
}

}  // namespace
}  // namespace expertvote
