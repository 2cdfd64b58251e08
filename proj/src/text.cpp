#include "expertvote/text.hpp"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <regex>

#include "expertvote/corpus.hpp"
#include "expertvote/errors.hpp"

namespace expertvote {
namespace {

const icu::Normalizer2& nfkd() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFKDInstance(status);
  if (U_FAILURE(status) || n == nullptr) throw std::runtime_error("ICU NFKD normalizer unavailable");
  return *n;
}

bool is_separator(UChar32 c) {
  return u_isUWhiteSpace(c) || u_charType(c) == U_CONTROL_CHAR;
}

bool is_strippable_mark(UChar32 c) {
  const auto type = u_charType(c);
  return type == U_NON_SPACING_MARK || type == U_ENCLOSING_MARK;
}

// NFKD, lowercase, NFKD again (lowercasing can reintroduce composed forms),
// then strip combining marks.
icu::UnicodeString fold(std::string_view raw) {
  const auto& norm = nfkd();
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString text = icu::UnicodeString::fromUTF8(icu::StringPiece(raw.data(), static_cast<int32_t>(raw.size())));
  text = norm.normalize(text, status);
  text.toLower(icu::Locale::getRoot());
  text = norm.normalize(text, status);
  if (U_FAILURE(status)) throw std::runtime_error("ICU normalization failed");

  icu::UnicodeString out;
  for (int32_t i = 0; i < text.length();) {
    const UChar32 c = text.char32At(i);
    if (!is_strippable_mark(c)) out.append(c);
    i = text.moveIndex32(i, 1);
  }
  return out;
}

std::vector<icu::UnicodeString> split_whitespace(const icu::UnicodeString& text) {
  std::vector<icu::UnicodeString> tokens;
  icu::UnicodeString current;
  for (int32_t i = 0; i < text.length();) {
    const UChar32 c = text.char32At(i);
    if (is_separator(c)) {
      if (!current.isEmpty()) tokens.push_back(std::move(current));
      current.remove();
    } else {
      current.append(c);
    }
    i = text.moveIndex32(i, 1);
  }
  if (!current.isEmpty()) tokens.push_back(std::move(current));
  return tokens;
}

icu::UnicodeString trim_punct(const icu::UnicodeString& token) {
  int32_t begin = 0;
  int32_t end = token.length();
  while (begin < end) {
    const UChar32 c = token.char32At(begin);
    if (!u_ispunct(c)) break;
    begin = token.moveIndex32(begin, 1);
  }
  while (end > begin) {
    const int32_t prev = token.moveIndex32(end, -1);
    if (!u_ispunct(token.char32At(prev))) break;
    end = prev;
  }
  return icu::UnicodeString(token, begin, end - begin);
}

std::string to_utf8(const icu::UnicodeString& s) {
  std::string out;
  s.toUTF8String(out);
  return out;
}

const std::regex& url_pattern() {
  static const std::regex re(R"(^([a-z][a-z0-9+.\-]*://|www\.).*)");
  return re;
}

const std::regex& email_pattern() {
  static const std::regex re(R"(^[^@\s]+@[^@\s]+\.[^@\s]+$)");
  return re;
}

bool is_ascii_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

std::string_view trim_ascii(std::string_view s) {
  while (!s.empty() && is_ascii_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_ascii_space(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string clean_text(std::string_view raw, const StopwordSet& stopwords) {
  std::string out;
  for (const auto& token : split_whitespace(fold(raw))) {
    const std::string bare = to_utf8(trim_punct(token));
    if (std::regex_match(bare, url_pattern()) || std::regex_match(bare, email_pattern())) continue;
    const std::string full = to_utf8(token);
    if (stopwords.contains(full) || (!bare.empty() && stopwords.contains(bare))) continue;
    if (!out.empty()) out.push_back(' ');
    out += full;
  }
  return out;
}

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> sentences;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c != '.' && c != '!' && c != '?') continue;
    if (i + 1 < text.size() && !is_ascii_space(text[i + 1])) continue;
    const auto piece = trim_ascii(text.substr(start, i + 1 - start));
    if (!piece.empty()) sentences.emplace_back(piece);
    start = i + 1;
  }
  if (start < text.size()) {
    const auto rest = trim_ascii(text.substr(start));
    if (!rest.empty()) sentences.emplace_back(rest);
  }
  return sentences;
}

std::vector<std::string> tokenize(std::string_view cleaned) {
  std::vector<std::string> tokens;
  const auto text = icu::UnicodeString::fromUTF8(icu::StringPiece(cleaned.data(), static_cast<int32_t>(cleaned.size())));
  for (const auto& token : split_whitespace(text)) {
    auto bare = trim_punct(token);
    if (!bare.isEmpty()) tokens.push_back(to_utf8(bare));
  }
  return tokens;
}

std::string normalize_tag(std::string_view tag) {
  auto text = icu::UnicodeString::fromUTF8(icu::StringPiece(tag.data(), static_cast<int32_t>(tag.size())));
  text.toLower(icu::Locale::getRoot());
  std::string out;
  for (const auto& token : split_whitespace(text)) {
    if (!out.empty()) out.push_back(' ');
    out += to_utf8(token);
  }
  return out;
}

StopwordSet load_stopwords(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open stopword file " + path.string());
  StopwordSet words;
  std::string line;
  while (std::getline(in, line)) {
    const auto word = trim_ascii(line);
    if (!word.empty()) words.emplace(word);
  }
  return words;
}

void save_stopwords(const StopwordSet& stopwords, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write stopword file " + path.string());
  for (const auto& w : stopwords) out << w << '\n';
}

StopwordSet corpus_stopwords(const Corpus& corpus, std::size_t top_n) {
  const StopwordSet none;
  std::map<std::string, std::size_t> counts;
  for (const auto& [id, paper] : corpus.papers) {
    for (auto& token : tokenize(clean_text(paper.title + " " + paper.abstract, none))) ++counts[std::move(token)];
  }
  std::vector<std::pair<std::string, std::size_t>> ranked(counts.begin(), counts.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  StopwordSet out;
  for (std::size_t i = 0; i < ranked.size() && i < top_n; ++i) out.insert(ranked[i].first);
  return out;
}

}  // namespace expertvote
