#include "expertvote/retrofit.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

#include "expertvote/errors.hpp"

namespace expertvote {

CitationLexicon lexicon_from_corpus(const Corpus& corpus, bool symmetrize) {
  std::map<std::string, std::set<std::string>> edges;
  for (const auto& [id, paper] : corpus.papers) {
    auto& out = edges[id];
    for (const auto& ref : paper.references) {
      if (ref == id) continue;
      out.insert(ref);
      if (symmetrize && corpus.papers.contains(ref)) edges[ref].insert(id);
    }
  }
  CitationLexicon lexicon;
  for (auto& [id, refs] : edges) lexicon.neighbors.emplace(id, std::vector<std::string>(refs.begin(), refs.end()));
  return lexicon;
}

CitationLexicon load_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open lexicon " + path.string());
  CitationLexicon lexicon;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto obj = nlohmann::json::parse(line);
      const auto id = obj.at("id").get<std::string>();
      std::set<std::string> refs;
      for (const auto& n : obj.at("neighbors")) {
        auto ref = n.get<std::string>();
        if (ref != id) refs.insert(std::move(ref));
      }
      lexicon.neighbors[id] = std::vector<std::string>(refs.begin(), refs.end());
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(path.string(), line_no, e.what());
    }
  }
  return lexicon;
}

std::map<std::string, Embedding> retrofit(const std::map<std::string, Embedding>& original,
                                          const CitationLexicon& lexicon, const RetrofitConfig& config) {
  if (config.num_iter < 1) throw ArgumentError("retrofit needs at least one iteration");
  if (original.empty()) return {};
  const std::size_t dim = original.begin()->second.size();
  for (const auto& [id, v] : original) require_dim(v, dim, "retrofit input " + id);

  std::vector<std::string> order = config.iteration_order;
  if (order.empty())
    for (const auto& [id, v] : original) order.push_back(id);

  // Resolve every visited paper once: its slot in the working map and the
  // slots of its in-corpus neighbours.
  std::map<std::string, Embedding> working = original;
  struct Update {
    const Embedding* anchor;
    Embedding* target;
    std::vector<const Embedding*> neighbors;
  };
  std::vector<Update> updates;
  for (const auto& id : order) {
    auto self = working.find(id);
    auto entry = lexicon.neighbors.find(id);
    if (self == working.end() || entry == lexicon.neighbors.end()) continue;
    Update u{&original.at(id), &self->second, {}};
    std::set<std::string> unique(entry->second.begin(), entry->second.end());
    for (const auto& q : unique) {
      if (q == id) continue;
      if (auto it = working.find(q); it != working.end()) u.neighbors.push_back(&it->second);
    }
    if (!u.neighbors.empty()) updates.push_back(std::move(u));
  }

  Embedding next(dim);
  for (int it = 0; it < config.num_iter; ++it) {
    for (const auto& u : updates) {
      const double n = static_cast<double>(u.neighbors.size());
      for (std::size_t i = 0; i < dim; ++i) next[i] = n * (*u.anchor)[i];
      for (const auto* q : u.neighbors)
        for (std::size_t i = 0; i < dim; ++i) next[i] += (*q)[i];
      for (std::size_t i = 0; i < dim; ++i) (*u.target)[i] = next[i] / (2.0 * n);
    }
  }
  return working;
}

std::map<std::string, double> retrofit_residual(const std::map<std::string, Embedding>& original,
                                                const std::map<std::string, Embedding>& retrofitted) {
  if (original.size() != retrofitted.size()) throw ValidationError("residual: key sets differ");
  std::map<std::string, double> out;
  for (const auto& [id, a] : original) {
    auto it = retrofitted.find(id);
    if (it == retrofitted.end()) throw ValidationError("residual: " + id + " missing from retrofitted map");
    const auto& b = it->second;
    require_dim(b, a.size(), "residual " + id);
    Embedding diff(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
    out.emplace(id, l2_norm(diff));
  }
  return out;
}

}  // namespace expertvote
