#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace expertvote {

struct Corpus;

using StopwordSet = std::set<std::string, std::less<>>;

/// Lowercases, compatibility-normalizes (NFKD, combining marks stripped),
/// drops URL and e-mail tokens and stopwords, and collapses whitespace.
/// Idempotent.
std::string clean_text(std::string_view raw, const StopwordSet& stopwords);

/// Splits on '.', '!' or '?' followed by whitespace or end of text. Input
/// without any terminator comes back as a single sentence.
std::vector<std::string> split_sentences(std::string_view text);

/// Whitespace split with leading/trailing punctuation trimmed from each token.
/// Intended for text that already went through clean_text.
std::vector<std::string> tokenize(std::string_view cleaned);

/// Lowercase, whitespace collapsed, trimmed. Used for tags and queries.
std::string normalize_tag(std::string_view tag);

StopwordSet load_stopwords(const std::filesystem::path& path);
void save_stopwords(const StopwordSet& stopwords, const std::filesystem::path& path);

/// The `top_n` most frequent tokens over all titles and abstracts (ties by
/// token). Counted on text cleaned without any stopword list.
StopwordSet corpus_stopwords(const Corpus& corpus, std::size_t top_n);

}  // namespace expertvote
