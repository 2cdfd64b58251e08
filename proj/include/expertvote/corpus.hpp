#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace expertvote {

struct AuthorSlot {
  std::string author_id;
  int position = 0;  // 1-based

  bool operator==(const AuthorSlot&) const = default;
};

struct PaperRecord {
  std::string paper_id;
  std::string title;
  std::string abstract;
  std::vector<AuthorSlot> authors;  // ordered by position
  std::vector<std::string> references;
  std::int64_t n_citations = 0;

  bool operator==(const PaperRecord&) const = default;
};

struct AuthorRecord {
  std::string author_id;
  std::string name;
  std::vector<std::string> tags;       // normalized
  std::vector<std::string> paper_ids;  // sorted
  std::int64_t n_pubs = 0;             // == paper_ids.size() once linked

  bool operator==(const AuthorRecord&) const = default;
};

/// Immutable after load. Maps are ordered so every traversal is deterministic.
struct Corpus {
  std::map<std::string, PaperRecord> papers;
  std::map<std::string, AuthorRecord> authors;
  double avg_publications = 0.0;

  const PaperRecord* find_paper(const std::string& id) const;
  const AuthorRecord* find_author(const std::string& id) const;

  bool operator==(const Corpus&) const = default;
};

/// Counters for the non-fatal repairs applied while loading.
struct LoadReport {
  std::size_t dropped_author_links = 0;  // paper lists an author missing from authors.jsonl
  std::size_t dropped_self_references = 0;
  std::size_t n_pubs_mismatches = 0;  // declared n_pubs disagreed with linked paper count
};

/// Loads papers.jsonl and authors.jsonl, links both directions and recomputes
/// n_pubs and avg_publications. Throws ParseError on malformed lines and
/// ValidationError on duplicate ids or broken author positions.
Corpus load_corpus(const std::filesystem::path& papers_path,
                   const std::filesystem::path& authors_path, LoadReport* report = nullptr);

/// Writes the corpus back in the same JSONL schemas (sorted by id).
void save_corpus(const Corpus& corpus, const std::filesystem::path& papers_path,
                 const std::filesystem::path& authors_path);

/// Recomputes reverse links, n_pubs and avg_publications from the paper side.
void link_corpus(Corpus& corpus);

}  // namespace expertvote
