#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "expertvote/corpus.hpp"
#include "expertvote/embedding.hpp"
#include "expertvote/run_file.hpp"

namespace expertvote {

enum class RelevanceMode { kExact, kApprox };

std::string to_string(RelevanceMode mode);
RelevanceMode parse_relevance_mode(const std::string& name);

/// True iff the normalized query equals one of the author's normalized tags.
bool is_relevant_exact(const AuthorRecord& author, std::string_view query);

/// True iff some tag has cosine >= threshold with the query. No tags -> false.
/// Throws ArgumentError unless threshold is in (0, 1].
bool is_relevant_approx(std::span<const double> query_embedding, const std::vector<Embedding>& tag_embeddings,
                        double threshold);

/// Text -> vector in the engine's embedding space; nullopt when the text
/// cannot be embedded (e.g. no known tokens).
using TextEmbedder = std::function<std::optional<Embedding>(std::string_view)>;

/// Embedding-based relevance with a per-tag cache.
class ApproxRelevance {
 public:
  ApproxRelevance(TextEmbedder embed, double threshold);

  bool relevant(const AuthorRecord& author, std::string_view query);
  double threshold() const { return threshold_; }

 private:
  const std::optional<Embedding>& lookup(const std::string& text);

  TextEmbedder embed_;
  double threshold_;
  std::map<std::string, std::optional<Embedding>> cache_;
};

struct IdealEntry {
  std::string author_id;
  int grade = 0;  // 0..3
  std::int64_t proxy = 0;

  bool operator==(const IdealEntry&) const = default;
};

/// Ground truth for one query.
struct QueryJudgment {
  std::string query;                       // normalized
  std::vector<IdealEntry> ideal;           // grade desc, proxy desc, author id asc
  double idcg_at_10 = 0.0;
  std::set<std::string> relevant;          // exact topic relevance
  std::set<std::string> approx_relevant;   // approximate topic relevance

  bool usable() const { return idcg_at_10 > 0.0; }
  /// DCG of the ideal grades cut at n.
  double idcg_at(int n) const;
  int grade_of(const std::string& author_id) const;

  bool operator==(const QueryJudgment&) const = default;
};

/// Expertise proxy = sum of n_citations over the relevant author's papers.
/// Grades come from proxy quartiles among relevant authors (ties share the
/// grade of the tie group's first rank); a zero proxy is grade 0. The ideal
/// list ranks authors relevant under `mode`. `approx` may be null, in which
/// case the approximate set equals the exact set.
QueryJudgment build_ideal_ranking(std::string_view query, const Corpus& corpus, RelevanceMode mode,
                                  ApproxRelevance* approx);

void write_judgments(const std::vector<QueryJudgment>& judgments, const std::filesystem::path& path);
std::vector<QueryJudgment> read_judgments(const std::filesystem::path& path);

/// Reads queries.txt: one query per line, blank lines skipped, normalized.
std::vector<std::string> read_queries(const std::filesystem::path& path);

inline const std::vector<int> kDefaultCutoffs{5, 10};

struct QueryMetrics {
  std::string query;
  std::map<std::string, double> values;
};

struct MetricsReport {
  std::vector<std::string> metric_names;  // display order
  std::vector<QueryMetrics> per_query;
  std::map<std::string, double> means;
  std::size_t queries_without_relevant = 0;
  std::map<std::string, std::string> header;  // free-form run description

  std::string to_json() const;
  std::string to_table() const;
};

/// Per-query MRR@N, MP@N and MAP@N under both relevance modes, plus nDCG@N,
/// for each cutoff N, and their means. Throws ValidationError naming a run
/// query that has no judgment.
MetricsReport evaluate_run(const std::vector<RunRecord>& run, const std::vector<QueryJudgment>& judgments,
                           const std::vector<int>& cutoffs = kDefaultCutoffs);

}  // namespace expertvote
