#pragma once

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include "expertvote/hnsw.hpp"
#include "expertvote/judgments.hpp"
#include "expertvote/vindex.hpp"
#include "expertvote/voting.hpp"

namespace expertvote {

enum class EmbedderKind { kMerge, kSeparate, kPooled, kLsi };

std::string to_string(EmbedderKind kind);
EmbedderKind parse_embedder(const std::string& name);

/// Everything a pipeline run needs. Relative paths in the file are resolved
/// against the config file's directory.
struct EngineConfig {
  std::filesystem::path papers;
  std::filesystem::path authors;
  std::filesystem::path stopwords;  // empty: corpus top-N list
  std::size_t stopwords_top_n = 100;
  std::filesystem::path artifacts = "artifacts";

  EmbedderKind embedder = EmbedderKind::kLsi;
  std::size_t lsi_dim = 768;
  std::filesystem::path sentence_embeddings;  // EMB1, merge/separate
  std::filesystem::path query_embeddings;     // EMB1 sidecar, merge/separate
  std::filesystem::path tag_embeddings;       // EMB1 sidecar, merge/separate
  std::filesystem::path word_vectors;         // text vectors, pooled

  bool retrofit = false;
  int retrofit_iterations = 10;
  std::filesystem::path lexicon;  // empty: derived from references
  bool symmetrize_lexicon = false;

  Backend backend = Backend::kExact;
  HnswParams hnsw;

  WeightingStrategy weighting;
  NormalizationParams normalization;  // avg_publications filled from the corpus

  std::size_t docs = 100;
  std::size_t experts = 10;
  std::size_t max_experts = 1000;

  double approx_threshold = 0.7;
  RelevanceMode relevance_mode = RelevanceMode::kExact;

  std::string host = "127.0.0.1";
  int port = 8080;

  /// Throws ArgumentError on out-of-range values and std::runtime_error on
  /// missing input files.
  void validate() const;
};

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

/// Reads the process environment.
std::optional<std::string> process_env(const std::string& name);

/// Parses a JSON config; every key may be overridden by EXPERTVOTE_<KEY>
/// (upper case). `path` may be empty to start from defaults.
EngineConfig load_config(const std::filesystem::path& path, const EnvLookup& env = process_env);

/// The effective configuration as JSON (paths as given after resolution).
std::string describe_config(const EngineConfig& config);

}  // namespace expertvote
