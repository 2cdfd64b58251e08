#include "expertvote/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include <json.hpp>

#include "expertvote/errors.hpp"

namespace expertvote {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr const char* kEnvPrefix = "EXPERTVOTE_";

const std::vector<std::string> kPathKeys{"papers",           "authors",        "stopwords",
                                         "artifacts",        "sentence_embeddings", "query_embeddings",
                                         "tag_embeddings",   "word_vectors",   "lexicon"};

json defaults() {
  const EngineConfig c;
  return {
      {"papers", ""},
      {"authors", ""},
      {"stopwords", ""},
      {"stopwords_top_n", c.stopwords_top_n},
      {"artifacts", c.artifacts.string()},
      {"embedder", to_string(c.embedder)},
      {"lsi_dim", c.lsi_dim},
      {"sentence_embeddings", ""},
      {"query_embeddings", ""},
      {"tag_embeddings", ""},
      {"word_vectors", ""},
      {"retrofit", c.retrofit},
      {"retrofit_iterations", c.retrofit_iterations},
      {"lexicon", ""},
      {"symmetrize_lexicon", c.symmetrize_lexicon},
      {"backend", to_string(c.backend)},
      {"hnsw_m", c.hnsw.m},
      {"hnsw_ef_construction", c.hnsw.ef_construction},
      {"hnsw_ef_search", c.hnsw.ef_search},
      {"hnsw_seed", c.hnsw.seed},
      {"weighting", to_string(c.weighting.kind)},
      {"descending_start", c.weighting.descending_start},
      {"descending_step", c.weighting.descending_step},
      {"weight_floor", c.weighting.floor},
      {"normalize", c.normalization.enabled},
      {"alpha", c.normalization.alpha},
      {"beta", c.normalization.beta},
      {"docs", c.docs},
      {"experts", c.experts},
      {"max_experts", c.max_experts},
      {"approx_threshold", c.approx_threshold},
      {"relevance_mode", to_string(c.relevance_mode)},
      {"host", c.host},
      {"port", c.port},
  };
}

json parse_env_value(const std::string& key, const json& current, const std::string& raw) {
  try {
    if (current.is_boolean()) {
      std::string v = raw;
      std::transform(v.begin(), v.end(), v.begin(), [](unsigned char ch) { return std::tolower(ch); });
      if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
      if (v == "0" || v == "false" || v == "no" || v == "off") return false;
      throw ArgumentError("not a boolean");
    }
    std::size_t used = 0;
    if (current.is_number_unsigned() || current.is_number_integer()) {
      const long long v = std::stoll(raw, &used);
      if (used != raw.size()) throw ArgumentError("not an integer");
      return v;
    }
    if (current.is_number_float()) {
      const double v = std::stod(raw, &used);
      if (used != raw.size()) throw ArgumentError("not a number");
      return v;
    }
  } catch (const std::exception&) {
    throw ArgumentError(std::string(kEnvPrefix) + key + "='" + raw + "' has the wrong type");
  }
  return raw;
}

template <typename T>
T non_negative(const json& j, const char* key) {
  const auto v = j.at(key).get<long long>();
  if (v < 0) throw ArgumentError(std::string(key) + " must be non-negative");
  return static_cast<T>(v);
}

}  // namespace

std::string to_string(EmbedderKind kind) {
  switch (kind) {
    case EmbedderKind::kMerge: return "merge";
    case EmbedderKind::kSeparate: return "separate";
    case EmbedderKind::kPooled: return "pooled";
    case EmbedderKind::kLsi: return "lsi";
  }
  return "lsi";
}

EmbedderKind parse_embedder(const std::string& name) {
  if (name == "merge") return EmbedderKind::kMerge;
  if (name == "separate") return EmbedderKind::kSeparate;
  if (name == "pooled") return EmbedderKind::kPooled;
  if (name == "lsi") return EmbedderKind::kLsi;
  throw ArgumentError("unknown embedder '" + name + "' (merge, separate, pooled or lsi)");
}

std::optional<std::string> process_env(const std::string& name) {
  if (const char* v = std::getenv(name.c_str())) return std::string(v);
  return std::nullopt;
}

EngineConfig load_config(const fs::path& path, const EnvLookup& env) {
  json merged = defaults();
  if (!path.empty()) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open config " + path.string());
    json file;
    try {
      file = json::parse(in);
    } catch (const json::parse_error& e) {
      throw std::runtime_error("config " + path.string() + ": " + e.what());
    }
    if (!file.is_object()) throw std::runtime_error("config " + path.string() + " must be a JSON object");
    const fs::path base = path.parent_path();
    for (auto& [key, value] : file.items()) {
      if (!merged.contains(key)) throw ArgumentError("unknown config key '" + key + "'");
      merged[key] = value;
      const bool is_path = std::find(kPathKeys.begin(), kPathKeys.end(), key) != kPathKeys.end();
      if (is_path && value.is_string() && !value.get<std::string>().empty()) {
        const fs::path p = value.get<std::string>();
        merged[key] = (p.is_absolute() ? p : base / p).lexically_normal().string();
      }
    }
  }
  for (auto& [key, value] : merged.items()) {
    std::string name = kEnvPrefix + key;
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char ch) { return std::toupper(ch); });
    if (auto raw = env(name)) value = parse_env_value(key, value, *raw);
  }

  EngineConfig c;
  try {
    c.papers = merged.at("papers").get<std::string>();
    c.authors = merged.at("authors").get<std::string>();
    c.stopwords = merged.at("stopwords").get<std::string>();
    c.stopwords_top_n = non_negative<std::size_t>(merged, "stopwords_top_n");
    c.artifacts = merged.at("artifacts").get<std::string>();
    c.embedder = parse_embedder(merged.at("embedder").get<std::string>());
    c.lsi_dim = non_negative<std::size_t>(merged, "lsi_dim");
    c.sentence_embeddings = merged.at("sentence_embeddings").get<std::string>();
    c.query_embeddings = merged.at("query_embeddings").get<std::string>();
    c.tag_embeddings = merged.at("tag_embeddings").get<std::string>();
    c.word_vectors = merged.at("word_vectors").get<std::string>();
    c.retrofit = merged.at("retrofit").get<bool>();
    c.retrofit_iterations = merged.at("retrofit_iterations").get<int>();
    c.lexicon = merged.at("lexicon").get<std::string>();
    c.symmetrize_lexicon = merged.at("symmetrize_lexicon").get<bool>();
    c.backend = parse_backend(merged.at("backend").get<std::string>());
    c.hnsw.m = non_negative<std::uint32_t>(merged, "hnsw_m");
    c.hnsw.ef_construction = non_negative<std::uint32_t>(merged, "hnsw_ef_construction");
    c.hnsw.ef_search = non_negative<std::uint32_t>(merged, "hnsw_ef_search");
    c.hnsw.seed = merged.at("hnsw_seed").get<std::uint64_t>();
    c.weighting.kind = parse_weighting(merged.at("weighting").get<std::string>());
    c.weighting.descending_start = merged.at("descending_start").get<double>();
    c.weighting.descending_step = merged.at("descending_step").get<double>();
    c.weighting.floor = merged.at("weight_floor").get<double>();
    c.normalization.enabled = merged.at("normalize").get<bool>();
    c.normalization.alpha = merged.at("alpha").get<double>();
    c.normalization.beta = merged.at("beta").get<double>();
    c.docs = non_negative<std::size_t>(merged, "docs");
    c.experts = non_negative<std::size_t>(merged, "experts");
    c.max_experts = non_negative<std::size_t>(merged, "max_experts");
    c.approx_threshold = merged.at("approx_threshold").get<double>();
    c.relevance_mode = parse_relevance_mode(merged.at("relevance_mode").get<std::string>());
    c.host = merged.at("host").get<std::string>();
    c.port = merged.at("port").get<int>();
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("config value has the wrong type: ") + e.what());
  }
  return c;
}

void EngineConfig::validate() const {
  weighting.validate();
  if (lsi_dim < 1) throw ArgumentError("lsi_dim must be at least 1");
  if (retrofit_iterations < 1) throw ArgumentError("retrofit_iterations must be at least 1");
  if (hnsw.m < 2 || hnsw.ef_construction < 1 || hnsw.ef_search < 1) throw ArgumentError("HNSW parameters out of range");
  if (!(normalization.alpha > 0.0)) throw ArgumentError("alpha must be positive");
  if (!(normalization.beta >= 0.0)) throw ArgumentError("beta must be non-negative");
  if (!(approx_threshold > 0.0 && approx_threshold <= 1.0)) throw ArgumentError("approx_threshold must lie in (0, 1]");
  if (experts > max_experts) throw ArgumentError("experts exceeds max_experts");
  if (port < 0 || port > 65535) throw ArgumentError("port out of range");

  auto require_file = [](const fs::path& p, const char* what) {
    if (p.empty()) throw std::runtime_error(std::string(what) + " path is not configured");
    if (!fs::exists(p)) throw std::runtime_error(std::string(what) + " file not found: " + p.string());
  };
  require_file(papers, "papers");
  require_file(authors, "authors");
  if (!stopwords.empty()) require_file(stopwords, "stopwords");
  if (!lexicon.empty()) require_file(lexicon, "lexicon");
  switch (embedder) {
    case EmbedderKind::kMerge:
    case EmbedderKind::kSeparate: require_file(sentence_embeddings, "sentence_embeddings"); break;
    case EmbedderKind::kPooled: require_file(word_vectors, "word_vectors"); break;
    case EmbedderKind::kLsi: break;
  }
}

std::string describe_config(const EngineConfig& c) {
  json j = {
      {"papers", c.papers.string()},
      {"authors", c.authors.string()},
      {"stopwords", c.stopwords.string()},
      {"embedder", to_string(c.embedder)},
      {"lsi_dim", c.lsi_dim},
      {"retrofit", c.retrofit},
      {"retrofit_iterations", c.retrofit_iterations},
      {"backend", to_string(c.backend)},
      {"hnsw_m", c.hnsw.m},
      {"hnsw_ef_construction", c.hnsw.ef_construction},
      {"hnsw_ef_search", c.hnsw.ef_search},
      {"weighting", to_string(c.weighting.kind)},
      {"normalize", c.normalization.enabled},
      {"alpha", c.normalization.alpha},
      {"beta", c.normalization.beta},
      {"docs", c.docs},
      {"experts", c.experts},
      {"approx_threshold", c.approx_threshold},
      {"relevance_mode", to_string(c.relevance_mode)},
  };
  return j.dump();
}

}  // namespace expertvote
