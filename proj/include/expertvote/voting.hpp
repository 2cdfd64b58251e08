#pragma once

#include <span>
#include <string>
#include <vector>

#include "expertvote/corpus.hpp"
#include "expertvote/embedding.hpp"
#include "expertvote/vindex.hpp"

namespace expertvote {

enum class WeightingKind { kBinary, kUniform, kDescending, kParabolic };

std::string to_string(WeightingKind kind);
WeightingKind parse_weighting(const std::string& name);

/// How much of a document's vote each author receives, by author position.
struct WeightingStrategy {
  WeightingKind kind = WeightingKind::kBinary;
  double descending_start = 0.8;  // weight of the second author
  double descending_step = 0.2;   // decrement per further position
  double floor = 0.2;             // lower bound for late positions

  /// Throws ArgumentError unless 0 < floor <= descending_start <= 1 and step >= 0.
  void validate() const;
};

/// Candidate profile-length normalization:
///   s_N = s * log2(1 + alpha * aL / (lP + beta))
struct NormalizationParams {
  bool enabled = false;
  double alpha = 1.0;
  double beta = 0.0;
  double avg_publications = 0.0;  // aL
};

struct Evidence {
  std::string paper_id;
  double doc_score = 0.0;
  double weight = 0.0;

  bool operator==(const Evidence&) const = default;
};

struct ExpertEntry {
  std::string author_id;
  double score = 0.0;
  std::vector<Evidence> evidence;  // in retrieval order

  bool operator==(const ExpertEntry&) const = default;
};

/// Sorted by score descending, ties by author id ascending.
struct ExpertRanking {
  std::vector<ExpertEntry> entries;

  bool operator==(const ExpertRanking&) const = default;
};

/// Weight in (0, 1] for the author at 1-based `position` of `n_authors`.
/// Throws ArgumentError when position is out of range.
double author_weight(int position, int n_authors, const WeightingStrategy& strategy);

/// Weighted ExpCombSUM: each author C scores sum over retrieved d in D_C of
/// w(position of C in d) * exp(s(d, Q)). Throws ValidationError for a
/// retrieved paper missing from the corpus.
ExpertRanking exp_comb_sum(std::span<const ScoredDocument> retrieved, const Corpus& corpus,
                           const WeightingStrategy& strategy);

/// Throws DomainError when lP + beta <= 0 or aL <= 0, ArgumentError when alpha <= 0.
double normalize_score(double score, std::int64_t profile_len, const NormalizationParams& params);

/// Rescales every entry by its author's profile length and re-sorts.
void apply_normalization(ExpertRanking& ranking, const Corpus& corpus, const NormalizationParams& params);

/// Search -> ExpCombSUM -> optional normalization -> truncation.
ExpertRanking rank_experts(std::span<const double> query_embedding, const VectorIndex& index, const Corpus& corpus,
                           const WeightingStrategy& strategy, const NormalizationParams& norm,
                           std::size_t n_docs, std::size_t n_experts);

}  // namespace expertvote
