#include "expertvote/word_vectors.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "expertvote/errors.hpp"
#include "expertvote/strategies.hpp"

namespace expertvote {
namespace {

std::vector<Embedding> lookup(std::string_view sentence, const WordVectors& words, const StopwordSet& stopwords) {
  std::vector<Embedding> out;
  for (const auto& token : tokenize(clean_text(sentence, stopwords))) {
    if (const auto* v = words.find(token)) out.push_back(*v);
  }
  return out;
}

std::optional<Embedding> pool(const std::vector<std::vector<Embedding>>& sentences) {
  for (const auto& s : sentences)
    if (!s.empty()) return pool_double(sentences);
  return std::nullopt;
}

}  // namespace

const Embedding* WordVectors::find(std::string_view token) const {
  auto it = vectors.find(token);
  return it == vectors.end() ? nullptr : &it->second;
}

WordVectors load_word_vectors(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open word vectors " + path.string());
  WordVectors words;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string token;
    if (!(fields >> token)) continue;
    Embedding v;
    std::string number;
    while (fields >> number) {
      double x = 0.0;
      const auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), x);
      if (ec != std::errc{} || ptr != number.data() + number.size())
        throw ParseError(path.string(), line_no, "not a number: " + number);
      v.push_back(x);
    }
    if (v.empty()) throw ParseError(path.string(), line_no, "token without vector");
    if (words.dim == 0) words.dim = v.size();
    if (v.size() != words.dim) throw ParseError(path.string(), line_no, "ragged vector length");
    words.vectors.insert_or_assign(std::move(token), std::move(v));
  }
  return words;
}

std::vector<std::vector<Embedding>> sentence_token_vectors(const PaperRecord& paper, const WordVectors& words,
                                                           const StopwordSet& stopwords) {
  std::vector<std::vector<Embedding>> sentences;
  sentences.push_back(lookup(paper.title, words, stopwords));
  for (const auto& s : split_sentences(paper.abstract)) sentences.push_back(lookup(s, words, stopwords));
  return sentences;
}

std::optional<Embedding> embed_pooled(const PaperRecord& paper, const WordVectors& words,
                                      const StopwordSet& stopwords) {
  return pool(sentence_token_vectors(paper, words, stopwords));
}

std::optional<Embedding> embed_pooled_text(std::string_view text, const WordVectors& words,
                                           const StopwordSet& stopwords) {
  std::vector<std::vector<Embedding>> sentences;
  for (const auto& s : split_sentences(text)) sentences.push_back(lookup(s, words, stopwords));
  return pool(sentences);
}

}  // namespace expertvote
