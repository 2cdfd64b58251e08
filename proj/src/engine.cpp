#include "expertvote/engine.hpp"

#include <algorithm>
#include <fstream>

#include <fmt/format.h>

#include "expertvote/emb1.hpp"
#include "expertvote/errors.hpp"
#include "expertvote/retrofit.hpp"
#include "expertvote/sampling.hpp"
#include "expertvote/strategies.hpp"

namespace expertvote {
namespace {

namespace fs = std::filesystem;

std::optional<Embedding> unit_or_nothing(const Embedding& v) {
  const double n = l2_norm(v);
  if (!(n > 0.0) || !all_finite(v)) return std::nullopt;
  return normalized(v);
}

std::string lsi_document(const PaperRecord& paper, const StopwordSet& stopwords) {
  return clean_text(paper.title + " " + paper.abstract, stopwords);
}

}  // namespace

CorpusBundle load_corpus_bundle(const EngineConfig& config, const std::optional<fs::path>& artifacts) {
  CorpusBundle bundle;
  bundle.corpus = load_corpus(config.papers, config.authors, &bundle.load_report);
  if (!config.stopwords.empty()) {
    bundle.stopwords = load_stopwords(config.stopwords);
  } else if (artifacts && fs::exists(*artifacts / kStopwordsFile)) {
    bundle.stopwords = load_stopwords(*artifacts / kStopwordsFile);
  } else {
    bundle.stopwords = corpus_stopwords(bundle.corpus, config.stopwords_top_n);
  }
  return bundle;
}

IngestSummary run_ingest(const EngineConfig& config, const fs::path& out, std::int64_t sample_size,
                         std::uint64_t seed) {
  fs::create_directories(out);
  // Recompute rather than reuse a stopword list left by an earlier ingest.
  const auto bundle = load_corpus_bundle(config, std::nullopt);
  save_stopwords(bundle.stopwords, out / kStopwordsFile);

  IngestSummary summary;
  summary.papers = bundle.corpus.papers.size();
  summary.authors = bundle.corpus.authors.size();
  summary.report = bundle.load_report;
  summary.stopwords = bundle.stopwords.size();
  if (sample_size > 0) {
    const auto sample = stratified_author_sample(sampling_candidates(bundle.corpus), sample_size, seed);
    std::ofstream f(out / kSampleFile, std::ios::binary | std::ios::trunc);
    for (const auto& id : sample) f << id << '\n';
    summary.sampled_authors = sample.size();
  }
  return summary;
}

EmbedSummary run_embed(const EngineConfig& config, const fs::path& out) {
  fs::create_directories(out);
  const auto bundle = load_corpus_bundle(config, out);
  const auto& corpus = bundle.corpus;
  std::map<std::string, Embedding> vectors;
  EmbedSummary summary;

  auto keep = [&](const std::string& id, const std::optional<Embedding>& v) {
    if (auto unit = v ? unit_or_nothing(*v) : std::nullopt) {
      vectors.emplace(id, std::move(*unit));
    } else {
      ++summary.skipped;
    }
  };

  switch (config.embedder) {
    case EmbedderKind::kLsi: {
      std::vector<std::string> docs;
      for (const auto& [id, paper] : corpus.papers) docs.push_back(lsi_document(paper, bundle.stopwords));
      const auto model = lsi_fit(docs, config.lsi_dim);
      save_lsi_model(model, out / kLsiModelFile);
      std::size_t i = 0;
      for (const auto& [id, paper] : corpus.papers) keep(id, lsi_embed(model, docs[i++]));
      break;
    }
    case EmbedderKind::kPooled: {
      const auto words = load_word_vectors(config.word_vectors);
      for (const auto& [id, paper] : corpus.papers) keep(id, embed_pooled(paper, words, bundle.stopwords));
      break;
    }
    case EmbedderKind::kMerge:
    case EmbedderKind::kSeparate: {
      const auto sets = load_sentence_embeddings(config.sentence_embeddings);
      for (const auto& [id, paper] : corpus.papers) {
        auto it = sets.find(id);
        if (it == sets.end()) {
          ++summary.skipped;
          continue;
        }
        keep(id, config.embedder == EmbedderKind::kMerge ? embed_merge(it->second) : embed_separate(it->second));
      }
      break;
    }
  }
  if (vectors.empty()) throw ValidationError("no paper could be embedded");
  summary.embedded = vectors.size();
  summary.dim = vectors.begin()->second.size();
  save_vector_file(vectors, summary.dim, out / kPaperEmbeddingsFile);
  return summary;
}

RetrofitSummary run_retrofit(const EngineConfig& config, const fs::path& out) {
  const auto original = load_vector_file(out / kPaperEmbeddingsFile);
  const auto bundle = load_corpus_bundle(config, out);
  const auto lexicon =
      config.lexicon.empty() ? lexicon_from_corpus(bundle.corpus, config.symmetrize_lexicon) : load_lexicon(config.lexicon);
  RetrofitConfig rc;
  rc.num_iter = config.retrofit_iterations;
  auto updated = retrofit(original, lexicon, rc);

  RetrofitSummary summary;
  summary.papers = updated.size();
  for (const auto& [id, r] : retrofit_residual(original, updated)) {
    if (r > 0.0) ++summary.changed;
    summary.mean_residual += r;
    summary.max_residual = std::max(summary.max_residual, r);
  }
  if (summary.papers > 0) summary.mean_residual /= static_cast<double>(summary.papers);

  for (auto& [id, v] : updated) v = normalized(v);
  const auto dim = updated.empty() ? 0 : updated.begin()->second.size();
  save_vector_file(updated, dim, out / kRetrofittedFile);
  return summary;
}

VectorIndex run_index(const EngineConfig& config, const fs::path& embeddings, const fs::path& out) {
  if (!fs::exists(embeddings)) throw std::runtime_error("embeddings file not found: " + embeddings.string());
  fs::create_directories(out);
  auto index = VectorIndex::build(load_vector_file(embeddings), config.backend, config.hnsw);
  index.save(out / kIndexFile);
  return index;
}

std::shared_ptr<const Engine> Engine::open(const EngineConfig& config, const fs::path& artifacts) {
  std::shared_ptr<Engine> engine(new Engine());
  engine->config_ = config;
  engine->bundle_ = load_corpus_bundle(config, artifacts);
  engine->config_.normalization.avg_publications = engine->bundle_.corpus.avg_publications;
  engine->index_ = VectorIndex::load(artifacts / kIndexFile);
  switch (config.embedder) {
    case EmbedderKind::kLsi: engine->lsi_ = load_lsi_model(artifacts / kLsiModelFile); break;
    case EmbedderKind::kPooled: engine->words_ = load_word_vectors(config.word_vectors); break;
    case EmbedderKind::kMerge:
    case EmbedderKind::kSeparate:
      for (const auto* path : {&config.tag_embeddings, &config.query_embeddings}) {
        if (path->empty()) continue;
        for (auto& [id, v] : load_vector_file(*path)) engine->sidecar_.insert_or_assign(id, std::move(v));
      }
      break;
  }
  return engine;
}

std::optional<Embedding> Engine::embed_text(std::string_view text) const {
  if (lsi_) return unit_or_nothing(lsi_embed(*lsi_, clean_text(text, bundle_.stopwords)));
  if (words_) {
    auto v = embed_pooled_text(text, *words_, bundle_.stopwords);
    return v ? unit_or_nothing(*v) : std::nullopt;
  }
  auto it = sidecar_.find(std::string(text));
  if (it == sidecar_.end()) it = sidecar_.find(normalize_tag(text));
  if (it == sidecar_.end()) return std::nullopt;
  return unit_or_nothing(it->second);
}

std::optional<Embedding> Engine::embed_query(std::string_view query) const {
  auto v = embed_text(query);
  const bool contextual = !lsi_ && !words_;
  if (!v && contextual) throw ArgumentError("query '" + std::string(query) + "' has no precomputed embedding");
  return v;
}

ExpertRanking Engine::search(std::string_view query, std::size_t n_experts) const {
  if (n_experts == 0) return {};
  const auto q = embed_query(query);
  if (!q) return {};
  return rank_experts(*q, index_, bundle_.corpus, config_.weighting, config_.normalization, config_.docs, n_experts);
}

std::vector<RunRecord> run_queries(const Engine& engine, const std::vector<std::string>& queries,
                                   std::size_t n_experts) {
  std::vector<RunRecord> run;
  run.reserve(queries.size());
  for (const auto& q : queries) run.push_back({q, engine.search(q, n_experts)});
  return run;
}

std::vector<QueryJudgment> build_judgments(const Engine& engine, const std::vector<std::string>& queries) {
  ApproxRelevance approx([&engine](std::string_view t) { return engine.embed_text(t); },
                         engine.config().approx_threshold);
  std::vector<QueryJudgment> out;
  out.reserve(queries.size());
  for (const auto& q : queries) out.push_back(build_ideal_ranking(q, engine.corpus(), engine.config().relevance_mode, &approx));
  return out;
}

std::map<std::string, std::string> report_header(const EngineConfig& c) {
  std::map<std::string, std::string> h;
  h["embedder"] = to_string(c.embedder);
  h["relevance_embedder"] = to_string(c.embedder);
  h["retrofit"] = c.retrofit ? fmt::format("on ({} iterations)", c.retrofit_iterations) : "off";
  h["backend"] = to_string(c.backend);
  h["weighting"] = to_string(c.weighting.kind);
  h["normalization"] = c.normalization.enabled
                           ? fmt::format("alpha={} beta={}", c.normalization.alpha, c.normalization.beta)
                           : "off";
  h["docs"] = std::to_string(c.docs);
  h["approx_threshold"] = fmt::format("{}", c.approx_threshold);
  h["ideal_relevance"] = to_string(c.relevance_mode);
  return h;
}

}  // namespace expertvote
