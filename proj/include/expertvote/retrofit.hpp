#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "expertvote/corpus.hpp"
#include "expertvote/embedding.hpp"

namespace expertvote {

/// paper id -> cited paper ids. No self-loops.
struct CitationLexicon {
  std::map<std::string, std::vector<std::string>> neighbors;
};

struct RetrofitConfig {
  int num_iter = 10;
  /// Visit order within an iteration; empty means lexicographic paper id.
  std::vector<std::string> iteration_order;
};

/// Lexicon from the papers' reference lists; optionally adds the reverse of
/// every edge.
CitationLexicon lexicon_from_corpus(const Corpus& corpus, bool symmetrize = false);

/// Reads lexicon.jsonl lines of the form {"id": str, "neighbors": [str]}.
CitationLexicon load_lexicon(const std::filesystem::path& path);

/// Iterative retrofitting over the citation graph. Updates are in place
/// within an iteration, so later papers see earlier papers' new vectors:
///
///   v[p] <- (n * original[p] + sum_{q in N(p)} v[q]) / (2n),  n = |N(p)|
///
/// where N(p) is restricted to ids present in `original`. Papers without an
/// in-corpus neighbour, or without a lexicon entry, keep their original vector.
/// Throws ArgumentError if num_iter < 1 and ValidationError on a dim mismatch.
std::map<std::string, Embedding> retrofit(const std::map<std::string, Embedding>& original,
                                          const CitationLexicon& lexicon, const RetrofitConfig& config = {});

/// Per-paper L2 distance between the original and retrofitted vectors.
std::map<std::string, double> retrofit_residual(const std::map<std::string, Embedding>& original,
                                                const std::map<std::string, Embedding>& retrofitted);

}  // namespace expertvote
