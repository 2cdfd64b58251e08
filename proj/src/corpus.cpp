#include "expertvote/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>

#include <json.hpp>

#include "expertvote/errors.hpp"
#include "expertvote/text.hpp"

namespace expertvote {
namespace {

using nlohmann::json;

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return in;
}

template <typename Fn>
void for_each_json_line(const std::filesystem::path& path, Fn&& fn) {
  auto in = open_input(path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(path.string(), line_no, e.what());
    }
    if (!obj.is_object()) throw ParseError(path.string(), line_no, "expected a JSON object");
    try {
      fn(obj, line_no);
    } catch (const json::exception& e) {
      throw ParseError(path.string(), line_no, e.what());
    }
  }
}

}  // namespace

const PaperRecord* Corpus::find_paper(const std::string& id) const {
  auto it = papers.find(id);
  return it == papers.end() ? nullptr : &it->second;
}

const AuthorRecord* Corpus::find_author(const std::string& id) const {
  auto it = authors.find(id);
  return it == authors.end() ? nullptr : &it->second;
}

void link_corpus(Corpus& corpus) {
  for (auto& [id, author] : corpus.authors) author.paper_ids.clear();
  for (const auto& [pid, paper] : corpus.papers) {
    for (const auto& slot : paper.authors) {
      auto it = corpus.authors.find(slot.author_id);
      if (it != corpus.authors.end()) it->second.paper_ids.push_back(pid);
    }
  }
  std::int64_t total = 0;
  for (auto& [id, author] : corpus.authors) {
    // papers iterate in id order, so paper_ids is already sorted
    author.n_pubs = static_cast<std::int64_t>(author.paper_ids.size());
    total += author.n_pubs;
  }
  corpus.avg_publications =
      corpus.authors.empty() ? 0.0 : static_cast<double>(total) / static_cast<double>(corpus.authors.size());
}

Corpus load_corpus(const std::filesystem::path& papers_path, const std::filesystem::path& authors_path,
                   LoadReport* report) {
  LoadReport local;
  LoadReport& rep = report ? *report : local;
  rep = LoadReport{};
  Corpus corpus;
  std::map<std::string, std::int64_t> declared_pubs;

  for_each_json_line(authors_path, [&](const json& obj, std::size_t line_no) {
    AuthorRecord a;
    a.author_id = obj.at("id").get<std::string>();
    if (a.author_id.empty()) throw ParseError(authors_path.string(), line_no, "empty author id");
    a.name = obj.value("name", std::string{});
    std::set<std::string> tags;
    for (const auto& t : obj.value("tags", json::array())) {
      auto tag = normalize_tag(t.get<std::string>());
      if (!tag.empty()) tags.insert(std::move(tag));
    }
    a.tags.assign(tags.begin(), tags.end());
    declared_pubs[a.author_id] = obj.value("n_pubs", std::int64_t{-1});
    const auto id = a.author_id;
    if (!corpus.authors.emplace(id, std::move(a)).second)
      throw ValidationError(authors_path.string() + ":" + std::to_string(line_no) + ": duplicate author id " + id);
  });

  for_each_json_line(papers_path, [&](const json& obj, std::size_t line_no) {
    const auto where = papers_path.string() + ":" + std::to_string(line_no) + ": ";
    PaperRecord p;
    p.paper_id = obj.at("id").get<std::string>();
    if (p.paper_id.empty()) throw ParseError(papers_path.string(), line_no, "empty paper id");
    p.title = obj.value("title", std::string{});
    p.abstract = obj.value("abstract", std::string{});
    p.n_citations = obj.value("n_citations", std::int64_t{0});
    if (p.n_citations < 0) throw ValidationError(where + "negative n_citations");

    std::vector<AuthorSlot> slots;
    for (const auto& a : obj.value("authors", json::array()))
      slots.push_back({a.at("id").get<std::string>(), a.at("position").get<int>()});
    std::sort(slots.begin(), slots.end(), [](const auto& x, const auto& y) { return x.position < y.position; });
    std::set<std::string> seen;
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (slots[i].position != static_cast<int>(i) + 1)
        throw ValidationError(where + "author positions of " + p.paper_id + " are not 1..n");
      if (!seen.insert(slots[i].author_id).second)
        throw ValidationError(where + "author " + slots[i].author_id + " listed twice on " + p.paper_id);
    }
    for (auto& slot : slots) {
      if (!corpus.authors.contains(slot.author_id)) {
        ++rep.dropped_author_links;
        continue;
      }
      slot.position = static_cast<int>(p.authors.size()) + 1;
      p.authors.push_back(std::move(slot));
    }

    std::set<std::string> refs;
    for (const auto& r : obj.value("references", json::array())) {
      auto ref = r.get<std::string>();
      if (ref == p.paper_id) {
        ++rep.dropped_self_references;
        continue;
      }
      refs.insert(std::move(ref));
    }
    p.references.assign(refs.begin(), refs.end());

    const auto id = p.paper_id;
    if (!corpus.papers.emplace(id, std::move(p)).second) throw ValidationError(where + "duplicate paper id " + id);
  });

  link_corpus(corpus);
  for (const auto& [id, author] : corpus.authors) {
    const auto declared = declared_pubs[id];
    if (declared >= 0 && declared != author.n_pubs) ++rep.n_pubs_mismatches;
  }
  return corpus;
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& papers_path,
                 const std::filesystem::path& authors_path) {
  std::ofstream papers(papers_path, std::ios::binary);
  std::ofstream authors(authors_path, std::ios::binary);
  if (!papers || !authors) throw std::runtime_error("cannot write corpus files");

  for (const auto& [id, p] : corpus.papers) {
    json slots = json::array();
    for (const auto& s : p.authors) {
      const auto* a = corpus.find_author(s.author_id);
      slots.push_back({{"id", s.author_id}, {"name", a ? a->name : std::string{}}, {"position", s.position}});
    }
    json obj = {{"id", p.paper_id},       {"title", p.title},           {"abstract", p.abstract},
                {"authors", slots},       {"references", p.references}, {"n_citations", p.n_citations}};
    papers << obj.dump() << '\n';
  }
  for (const auto& [id, a] : corpus.authors) {
    json obj = {{"id", a.author_id}, {"name", a.name}, {"tags", a.tags}, {"n_pubs", a.n_pubs}};
    authors << obj.dump() << '\n';
  }
}

}  // namespace expertvote
