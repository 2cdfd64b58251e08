#pragma once

#include <map>
#include <string>
#include <vector>

#include "expertvote/emb1.hpp"
#include "expertvote/embedding.hpp"

namespace expertvote {

/// Mean over the title and every abstract sentence; the title counts as one sentence.
Embedding embed_merge(const SentenceEmbeddingSet& s);

/// Mean of the title and the abstract-sentence mean, so the title always
/// carries half the weight. Title alone when the abstract is empty.
Embedding embed_separate(const SentenceEmbeddingSet& s);

/// Token mean per sentence, then mean over sentences. Sentences without any
/// token vector are skipped; throws ValidationError when nothing remains.
Embedding pool_double(const std::vector<std::vector<Embedding>>& sentences);

enum class PoolingStrategy { kMerge, kSeparate };

/// Applies a strategy to every paper and L2-normalizes the result.
std::map<std::string, Embedding> embed_papers(const std::map<std::string, SentenceEmbeddingSet>& sets,
                                              PoolingStrategy strategy);

}  // namespace expertvote
