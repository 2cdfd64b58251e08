#include "expertvote/voting.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "expertvote/errors.hpp"

namespace expertvote {
namespace {

bool entry_before(const ExpertEntry& a, const ExpertEntry& b) {
  return a.score > b.score || (a.score == b.score && a.author_id < b.author_id);
}

double descending_value(int position, const WeightingStrategy& s) {
  if (position == 1) return 1.0;
  return std::max(s.floor, s.descending_start - s.descending_step * (position - 2));
}

}  // namespace

std::string to_string(WeightingKind kind) {
  switch (kind) {
    case WeightingKind::kBinary: return "binary";
    case WeightingKind::kUniform: return "uniform";
    case WeightingKind::kDescending: return "descending";
    case WeightingKind::kParabolic: return "parabolic";
  }
  return "binary";
}

WeightingKind parse_weighting(const std::string& name) {
  if (name == "binary") return WeightingKind::kBinary;
  if (name == "uniform") return WeightingKind::kUniform;
  if (name == "descending") return WeightingKind::kDescending;
  if (name == "parabolic") return WeightingKind::kParabolic;
  throw ArgumentError("unknown weighting '" + name + "'");
}

void WeightingStrategy::validate() const {
  if (!(floor > 0.0 && floor <= descending_start && descending_start <= 1.0))
    throw ArgumentError("weighting requires 0 < floor <= descending_start <= 1");
  if (!(descending_step >= 0.0)) throw ArgumentError("descending_step must be non-negative");
}

double author_weight(int position, int n_authors, const WeightingStrategy& strategy) {
  if (n_authors < 1 || position < 1 || position > n_authors)
    throw ArgumentError("author position " + std::to_string(position) + " outside 1.." + std::to_string(n_authors));
  switch (strategy.kind) {
    case WeightingKind::kBinary: return 1.0;
    case WeightingKind::kUniform: return 1.0 / n_authors;
    case WeightingKind::kDescending: return descending_value(position, strategy);
    case WeightingKind::kParabolic:
      return position == n_authors ? 1.0 : descending_value(position, strategy);
  }
  return 1.0;
}

ExpertRanking exp_comb_sum(std::span<const ScoredDocument> retrieved, const Corpus& corpus,
                           const WeightingStrategy& strategy) {
  // Canonical order so sums do not depend on how the caller ordered the list.
  std::vector<ScoredDocument> docs(retrieved.begin(), retrieved.end());
  std::sort(docs.begin(), docs.end(), ranks_before);

  std::map<std::string, ExpertEntry> by_author;
  for (const auto& doc : docs) {
    const auto* paper = corpus.find_paper(doc.paper_id);
    if (!paper) throw ValidationError("retrieved paper " + doc.paper_id + " is not in the corpus");
    const int n_authors = static_cast<int>(paper->authors.size());
    const double vote = std::exp(doc.score);
    for (const auto& slot : paper->authors) {
      const double w = author_weight(slot.position, n_authors, strategy);
      auto& entry = by_author[slot.author_id];
      entry.author_id = slot.author_id;
      entry.score += w * vote;
      entry.evidence.push_back({doc.paper_id, doc.score, w});
    }
  }

  ExpertRanking ranking;
  ranking.entries.reserve(by_author.size());
  for (auto& [id, entry] : by_author) ranking.entries.push_back(std::move(entry));
  std::sort(ranking.entries.begin(), ranking.entries.end(), entry_before);
  return ranking;
}

double normalize_score(double score, std::int64_t profile_len, const NormalizationParams& params) {
  if (!(params.alpha > 0.0)) throw ArgumentError("normalization alpha must be positive");
  const double length = static_cast<double>(profile_len) + params.beta;
  if (!(length > 0.0)) throw DomainError("profile length plus beta must be positive");
  if (!(params.avg_publications > 0.0)) throw DomainError("average publication count must be positive");
  return score * std::log2(1.0 + params.alpha * params.avg_publications / length);
}

void apply_normalization(ExpertRanking& ranking, const Corpus& corpus, const NormalizationParams& params) {
  for (auto& entry : ranking.entries) {
    const auto* author = corpus.find_author(entry.author_id);
    const std::int64_t len = author ? author->n_pubs : 0;
    entry.score = normalize_score(entry.score, len, params);
  }
  std::sort(ranking.entries.begin(), ranking.entries.end(), entry_before);
}

ExpertRanking rank_experts(std::span<const double> query_embedding, const VectorIndex& index, const Corpus& corpus,
                           const WeightingStrategy& strategy, const NormalizationParams& norm,
                           std::size_t n_docs, std::size_t n_experts) {
  const auto retrieved = index.search(query_embedding, n_docs);
  auto ranking = exp_comb_sum(retrieved, corpus, strategy);
  if (norm.enabled) apply_normalization(ranking, corpus, norm);
  if (ranking.entries.size() > n_experts) ranking.entries.resize(n_experts);
  return ranking;
}

}  // namespace expertvote
