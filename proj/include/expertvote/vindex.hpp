#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "expertvote/embedding.hpp"
#include "expertvote/hnsw.hpp"

namespace expertvote {

/// A retrieved paper and its cosine similarity to the query.
struct ScoredDocument {
  std::string paper_id;
  double score = 0.0;

  bool operator==(const ScoredDocument&) const = default;
};

/// Score descending, then paper id ascending.
bool ranks_before(const ScoredDocument& a, const ScoredDocument& b);

enum class Backend : std::uint8_t { kExact = 0, kHnsw = 1 };

std::string to_string(Backend b);
Backend parse_backend(const std::string& name);

/// Cosine top-n index over L2-normalized paper vectors. Immutable after
/// build; search is safe from any number of threads.
class VectorIndex {
 public:
  /// Normalizes and inserts every vector in paper-id order. Throws
  /// ValidationError naming the paper on a zero vector or dim mismatch.
  static VectorIndex build(const std::map<std::string, Embedding>& embeddings, Backend backend,
                           HnswParams params = {});

  /// Top min(n, count()) papers by cosine. Throws ValidationError when the
  /// query dim differs from dim() or the query is zero.
  std::vector<ScoredDocument> search(std::span<const double> query, std::size_t n) const;

  Backend backend() const { return backend_; }
  std::size_t dim() const { return dim_; }
  std::size_t count() const { return ids_.size(); }
  const HnswParams& params() const { return params_; }
  const std::vector<std::string>& ids() const { return ids_; }
  std::span<const double> vector(std::size_t i) const { return {data_.data() + i * dim_, dim_}; }

  /// VIDX byte image; equal indexes serialize to equal bytes.
  std::vector<char> serialize() const;
  void save(const std::filesystem::path& path) const;
  static VectorIndex load(const std::filesystem::path& path);

 private:
  VectorBlock block() const { return {data_, dim_}; }

  Backend backend_ = Backend::kExact;
  std::size_t dim_ = 0;
  HnswParams params_;
  std::vector<std::string> ids_;
  std::vector<double> data_;
  std::optional<HnswGraph> graph_;
};

/// Full scan over raw embeddings with the same contract as an exact search.
std::vector<ScoredDocument> exact_oracle(const std::map<std::string, Embedding>& embeddings,
                                         std::span<const double> query, std::size_t n);

}  // namespace expertvote
