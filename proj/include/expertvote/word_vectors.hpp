#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "expertvote/corpus.hpp"
#include "expertvote/embedding.hpp"
#include "expertvote/text.hpp"

namespace expertvote {

/// Static token vectors (GloVe-style text: `token v1 v2 ... vd` per line).
struct WordVectors {
  std::size_t dim = 0;
  std::map<std::string, Embedding, std::less<>> vectors;

  const Embedding* find(std::string_view token) const;
};

/// Throws ParseError on ragged or non-numeric lines.
WordVectors load_word_vectors(const std::filesystem::path& path);

/// Token vectors for each sentence: the title first, then every abstract
/// sentence. Each sentence is cleaned before lookup; unknown tokens are skipped.
std::vector<std::vector<Embedding>> sentence_token_vectors(const PaperRecord& paper, const WordVectors& words,
                                                           const StopwordSet& stopwords);

/// Double-pooled paper vector, or nullopt when no token of the paper is known.
std::optional<Embedding> embed_pooled(const PaperRecord& paper, const WordVectors& words,
                                      const StopwordSet& stopwords);

/// Double-pooled free text (treated as sentences), used for queries and tags.
std::optional<Embedding> embed_pooled_text(std::string_view text, const WordVectors& words,
                                           const StopwordSet& stopwords);

}  // namespace expertvote
