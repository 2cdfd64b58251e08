#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "expertvote/config.hpp"
#include "expertvote/corpus.hpp"
#include "expertvote/judgments.hpp"
#include "expertvote/lsi.hpp"
#include "expertvote/run_file.hpp"
#include "expertvote/text.hpp"
#include "expertvote/vindex.hpp"
#include "expertvote/voting.hpp"
#include "expertvote/word_vectors.hpp"

namespace expertvote {

// Artifact file names inside the artifacts directory.
inline constexpr const char* kStopwordsFile = "stopwords.txt";
inline constexpr const char* kSampleFile = "author_sample.txt";
inline constexpr const char* kPaperEmbeddingsFile = "paper_embeddings.emb1";
inline constexpr const char* kRetrofittedFile = "retrofitted.emb1";
inline constexpr const char* kLsiModelFile = "lsi.model";
inline constexpr const char* kIndexFile = "index.vidx";
inline constexpr const char* kRunFile = "run.jsonl";
inline constexpr const char* kJudgmentsFile = "judgments.jsonl";
inline constexpr const char* kReportJsonFile = "report.json";
inline constexpr const char* kReportTableFile = "report.txt";

/// Corpus plus the stopword list every stage agrees on: the configured file,
/// else <artifacts>/stopwords.txt when an artifacts dir is given, else the
/// corpus top-N list.
struct CorpusBundle {
  Corpus corpus;
  LoadReport load_report;
  StopwordSet stopwords;
};

CorpusBundle load_corpus_bundle(const EngineConfig& config,
                                const std::optional<std::filesystem::path>& artifacts);

struct IngestSummary {
  std::size_t papers = 0;
  std::size_t authors = 0;
  LoadReport report;
  std::size_t stopwords = 0;
  std::size_t sampled_authors = 0;
};

/// Validates the corpus and writes the stopword list; with sample_size > 0
/// also writes a stratified author sample.
IngestSummary run_ingest(const EngineConfig& config, const std::filesystem::path& out, std::int64_t sample_size = 0,
                         std::uint64_t seed = 0);

struct EmbedSummary {
  std::size_t embedded = 0;
  std::size_t skipped = 0;  // papers that could not be embedded
  std::size_t dim = 0;
};

/// Paper embeddings (L2-normalized) -> paper_embeddings.emb1; LSI also
/// writes lsi.model.
EmbedSummary run_embed(const EngineConfig& config, const std::filesystem::path& out);

struct RetrofitSummary {
  std::size_t papers = 0;
  std::size_t changed = 0;
  double mean_residual = 0.0;
  double max_residual = 0.0;
};

/// paper_embeddings.emb1 -> retrofitted.emb1 (re-normalized).
RetrofitSummary run_retrofit(const EngineConfig& config, const std::filesystem::path& out);

/// Builds the configured backend over an embedding file -> index.vidx.
VectorIndex run_index(const EngineConfig& config, const std::filesystem::path& embeddings,
                      const std::filesystem::path& out);

/// Immutable search engine over built artifacts. One code path serves the
/// CLI and the HTTP service.
class Engine {
 public:
  static std::shared_ptr<const Engine> open(const EngineConfig& config, const std::filesystem::path& artifacts);

  /// Query vector in the index space; nullopt when the text has no usable
  /// tokens. Throws ArgumentError when a contextual query is missing from
  /// the query sidecar.
  std::optional<Embedding> embed_query(std::string_view query) const;

  /// Embedding for tags/queries used by approximate relevance.
  std::optional<Embedding> embed_text(std::string_view text) const;

  ExpertRanking search(std::string_view query, std::size_t n_experts) const;

  const EngineConfig& config() const { return config_; }
  const Corpus& corpus() const { return bundle_.corpus; }
  const VectorIndex& index() const { return index_; }

 private:
  Engine() = default;

  EngineConfig config_;
  CorpusBundle bundle_;
  VectorIndex index_;
  std::optional<LsiModel> lsi_;
  std::optional<WordVectors> words_;
  std::map<std::string, Embedding> sidecar_;  // query and tag vectors for contextual embedders
};

std::vector<RunRecord> run_queries(const Engine& engine, const std::vector<std::string>& queries,
                                   std::size_t n_experts);

std::vector<QueryJudgment> build_judgments(const Engine& engine, const std::vector<std::string>& queries);

/// Header fields describing the configuration behind a report.
std::map<std::string, std::string> report_header(const EngineConfig& config);

}  // namespace expertvote
