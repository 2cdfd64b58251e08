#include "expertvote/judgments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "expertvote/errors.hpp"
#include "expertvote/metrics.hpp"
#include "expertvote/text.hpp"

namespace expertvote {
namespace {

using nlohmann::json;

// Float slack so that a tag embedded identically to the query still clears a
// threshold of exactly 1.0.
constexpr double kCosineSlack = 1e-12;

std::vector<int> ideal_grades(const QueryJudgment& j) {
  std::vector<int> grades;
  grades.reserve(j.ideal.size());
  for (const auto& e : j.ideal) grades.push_back(e.grade);
  return grades;
}

}  // namespace

std::string to_string(RelevanceMode mode) { return mode == RelevanceMode::kExact ? "exact" : "approx"; }

RelevanceMode parse_relevance_mode(const std::string& name) {
  if (name == "exact") return RelevanceMode::kExact;
  if (name == "approx" || name == "approximate") return RelevanceMode::kApprox;
  throw ArgumentError("unknown relevance mode '" + name + "'");
}

bool is_relevant_exact(const AuthorRecord& author, std::string_view query) {
  const auto q = normalize_tag(query);
  return std::any_of(author.tags.begin(), author.tags.end(), [&](const auto& t) { return normalize_tag(t) == q; });
}

bool is_relevant_approx(std::span<const double> query_embedding, const std::vector<Embedding>& tag_embeddings,
                        double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) throw ArgumentError("threshold must lie in (0, 1]");
  for (const auto& tag : tag_embeddings) {
    require_dim(tag, query_embedding.size(), "tag embedding");
    if (cosine(query_embedding, tag) >= threshold - kCosineSlack) return true;
  }
  return false;
}

ApproxRelevance::ApproxRelevance(TextEmbedder embed, double threshold)
    : embed_(std::move(embed)), threshold_(threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) throw ArgumentError("threshold must lie in (0, 1]");
}

const std::optional<Embedding>& ApproxRelevance::lookup(const std::string& text) {
  auto it = cache_.find(text);
  if (it == cache_.end()) it = cache_.emplace(text, embed_(text)).first;
  return it->second;
}

bool ApproxRelevance::relevant(const AuthorRecord& author, std::string_view query) {
  const auto& q = lookup(normalize_tag(query));
  if (!q) return false;
  std::vector<Embedding> tags;
  for (const auto& t : author.tags)
    if (const auto& v = lookup(t)) tags.push_back(*v);
  return is_relevant_approx(*q, tags, threshold_);
}

double QueryJudgment::idcg_at(int n) const { return dcg_at_n(ideal_grades(*this), n); }

int QueryJudgment::grade_of(const std::string& author_id) const {
  for (const auto& e : ideal)
    if (e.author_id == author_id) return e.grade;
  return 0;
}

QueryJudgment build_ideal_ranking(std::string_view query, const Corpus& corpus, RelevanceMode mode,
                                  ApproxRelevance* approx) {
  if (mode == RelevanceMode::kApprox && approx == nullptr)
    throw ArgumentError("approximate judgments need an embedder");
  QueryJudgment j;
  j.query = normalize_tag(query);
  for (const auto& [id, author] : corpus.authors) {
    if (is_relevant_exact(author, j.query)) j.relevant.insert(id);
    if (approx ? approx->relevant(author, j.query) : j.relevant.contains(id)) j.approx_relevant.insert(id);
  }

  const auto& chosen = mode == RelevanceMode::kExact ? j.relevant : j.approx_relevant;
  for (const auto& id : chosen) {
    IdealEntry e{id, 0, 0};
    for (const auto& pid : corpus.authors.at(id).paper_ids) e.proxy += corpus.papers.at(pid).n_citations;
    j.ideal.push_back(std::move(e));
  }
  std::sort(j.ideal.begin(), j.ideal.end(), [](const auto& a, const auto& b) {
    return a.proxy > b.proxy || (a.proxy == b.proxy && a.author_id < b.author_id);
  });
  const double count = static_cast<double>(j.ideal.size());
  std::size_t group_start = 0;
  for (std::size_t i = 0; i < j.ideal.size(); ++i) {
    if (i > 0 && j.ideal[i].proxy != j.ideal[i - 1].proxy) group_start = i;
    auto& e = j.ideal[i];
    if (e.proxy == 0) {
      e.grade = 0;
      continue;
    }
    const int quartile = static_cast<int>(std::floor(static_cast<double>(group_start) / count * 4.0));
    e.grade = std::clamp(3 - quartile, 0, 3);
  }
  // Grades are non-increasing along the proxy order already; this fixes the
  // final tie-break.
  std::stable_sort(j.ideal.begin(), j.ideal.end(), [](const auto& a, const auto& b) { return a.grade > b.grade; });
  j.idcg_at_10 = j.idcg_at(10);
  return j;
}

void write_judgments(const std::vector<QueryJudgment>& judgments, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write judgments " + path.string());
  for (const auto& j : judgments) {
    json ideal = json::array();
    for (const auto& e : j.ideal) ideal.push_back({{"author", e.author_id}, {"grade", e.grade}, {"proxy", e.proxy}});
    json obj = {{"query", j.query},
                {"ideal", std::move(ideal)},
                {"idcg10", j.idcg_at_10},
                {"relevant", j.relevant},
                {"approx_relevant", j.approx_relevant}};
    out << obj.dump() << '\n';
  }
}

std::vector<QueryJudgment> read_judgments(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open judgments " + path.string());
  std::vector<QueryJudgment> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto obj = json::parse(line);
      QueryJudgment j;
      j.query = normalize_tag(obj.at("query").get<std::string>());
      for (const auto& e : obj.at("ideal")) {
        const int grade = e.at("grade").get<int>();
        if (grade < 0 || grade > 3) throw ParseError(path.string(), line_no, "grade outside 0..3");
        j.ideal.push_back({e.at("author").get<std::string>(), grade, e.value("proxy", std::int64_t{0})});
      }
      j.idcg_at_10 = obj.at("idcg10").get<double>();
      if (obj.contains("relevant")) {
        j.relevant = obj.at("relevant").get<std::set<std::string>>();
      } else {
        for (const auto& e : j.ideal) j.relevant.insert(e.author_id);
      }
      j.approx_relevant =
          obj.contains("approx_relevant") ? obj.at("approx_relevant").get<std::set<std::string>>() : j.relevant;
      out.push_back(std::move(j));
    } catch (const json::exception& e) {
      throw ParseError(path.string(), line_no, e.what());
    }
  }
  return out;
}

std::vector<std::string> read_queries(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open queries " + path.string());
  std::vector<std::string> queries;
  std::string line;
  while (std::getline(in, line)) {
    auto q = normalize_tag(line);
    if (!q.empty()) queries.push_back(std::move(q));
  }
  return queries;
}

MetricsReport evaluate_run(const std::vector<RunRecord>& run, const std::vector<QueryJudgment>& judgments,
                           const std::vector<int>& cutoffs) {
  std::map<std::string, const QueryJudgment*> by_query;
  for (const auto& j : judgments) by_query.emplace(normalize_tag(j.query), &j);

  MetricsReport report;
  for (const char* mode : {"exact", "approx"})
    for (const char* metric : {"MRR", "MP", "MAP"})
      for (int n : cutoffs) report.metric_names.push_back(fmt::format("{}@{}_{}", metric, n, mode));
  for (int n : cutoffs) report.metric_names.push_back(fmt::format("nDCG@{}", n));

  for (const auto& record : run) {
    const auto key = normalize_tag(record.query);
    auto it = by_query.find(key);
    if (it == by_query.end()) throw ValidationError("no judgment for query '" + record.query + "'");
    const auto& j = *it->second;

    std::vector<bool> exact;
    std::vector<bool> approx;
    std::vector<int> grades;
    for (const auto& e : record.ranking.entries) {
      exact.push_back(j.relevant.contains(e.author_id));
      approx.push_back(j.approx_relevant.contains(e.author_id));
      grades.push_back(j.grade_of(e.author_id));
    }
    if (j.relevant.empty()) ++report.queries_without_relevant;

    QueryMetrics qm{key, {}};
    for (int n : cutoffs) {
      const auto cut = [n](const std::vector<bool>& rel) {
        return std::vector<bool>(rel.begin(), rel.begin() + std::min<std::ptrdiff_t>(n, std::ssize(rel)));
      };
      qm.values[fmt::format("MRR@{}_exact", n)] = reciprocal_rank(cut(exact));
      qm.values[fmt::format("MRR@{}_approx", n)] = reciprocal_rank(cut(approx));
      qm.values[fmt::format("MP@{}_exact", n)] = precision_at_n(exact, n);
      qm.values[fmt::format("MP@{}_approx", n)] = precision_at_n(approx, n);
      qm.values[fmt::format("MAP@{}_exact", n)] = average_precision_at_n(exact, n);
      qm.values[fmt::format("MAP@{}_approx", n)] = average_precision_at_n(approx, n);
      const double idcg = j.idcg_at(n);
      qm.values[fmt::format("nDCG@{}", n)] = idcg > 0.0 ? ndcg_at_n(grades, idcg, n) : 0.0;
    }
    report.per_query.push_back(std::move(qm));
  }

  for (const auto& name : report.metric_names) {
    double sum = 0.0;
    for (const auto& q : report.per_query) sum += q.values.at(name);
    report.means[name] = report.per_query.empty() ? 0.0 : sum / static_cast<double>(report.per_query.size());
  }
  return report;
}

std::string MetricsReport::to_json() const {
  json means_obj = json::object();
  for (const auto& name : metric_names) means_obj[name] = means.at(name);
  json queries = json::array();
  for (const auto& q : per_query) {
    json values = json::object();
    for (const auto& name : metric_names) values[name] = q.values.at(name);
    queries.push_back({{"query", q.query}, {"metrics", std::move(values)}});
  }
  json head = json::object();
  for (const auto& [k, v] : header) head[k] = v;
  head["queries"] = per_query.size();
  head["queries_without_relevant"] = queries_without_relevant;
  return json{{"header", std::move(head)}, {"means", std::move(means_obj)}, {"per_query", std::move(queries)}}.dump(2);
}

std::string MetricsReport::to_table() const {
  std::string out;
  for (const auto& [k, v] : header) out += fmt::format("# {}: {}\n", k, v);
  out += fmt::format("# queries: {} (without relevant authors: {})\n", per_query.size(), queries_without_relevant);
  out += fmt::format("{:<16} {:>8}\n", "metric", "mean");
  for (const auto& name : metric_names) out += fmt::format("{:<16} {:>8.4f}\n", name, means.at(name));
  return out;
}

}  // namespace expertvote
