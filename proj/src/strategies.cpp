#include "expertvote/strategies.hpp"

#include "expertvote/errors.hpp"

namespace expertvote {
namespace {

void check_dims(const SentenceEmbeddingSet& s) {
  const auto dim = s.title_embedding.size();
  if (dim == 0) throw ValidationError("paper " + s.paper_id + ": empty title embedding");
  for (const auto& v : s.abstract_embeddings) require_dim(v, dim, "paper " + s.paper_id + " abstract sentence");
}

}  // namespace

Embedding embed_merge(const SentenceEmbeddingSet& s) {
  check_dims(s);
  std::vector<Embedding> all;
  all.reserve(s.abstract_embeddings.size() + 1);
  all.insert(all.end(), s.abstract_embeddings.begin(), s.abstract_embeddings.end());
  all.push_back(s.title_embedding);
  return mean_of(all);
}

Embedding embed_separate(const SentenceEmbeddingSet& s) {
  check_dims(s);
  if (s.abstract_embeddings.empty()) return s.title_embedding;
  const std::vector<Embedding> pair{s.title_embedding, mean_of(s.abstract_embeddings)};
  return mean_of(pair);
}

Embedding pool_double(const std::vector<std::vector<Embedding>>& sentences) {
  std::vector<Embedding> sentence_means;
  for (const auto& tokens : sentences) {
    if (!tokens.empty()) sentence_means.push_back(mean_of(tokens));
  }
  if (sentence_means.empty()) throw ValidationError("double pooling needs at least one token vector");
  return mean_of(sentence_means);
}

std::map<std::string, Embedding> embed_papers(const std::map<std::string, SentenceEmbeddingSet>& sets,
                                              PoolingStrategy strategy) {
  std::map<std::string, Embedding> out;
  for (const auto& [id, s] : sets) {
    auto v = strategy == PoolingStrategy::kMerge ? embed_merge(s) : embed_separate(s);
    try {
      out.emplace(id, normalized(v));
    } catch (const ValidationError&) {
      throw ValidationError("paper " + id + ": pooled embedding is zero or non-finite");
    }
  }
  return out;
}

}  // namespace expertvote
