#include "expertvote/vindex.hpp"

#include <algorithm>

#include "binary_io.hpp"
#include "expertvote/errors.hpp"

namespace expertvote {
namespace {

constexpr std::string_view kMagic = "VIDX";
constexpr std::uint32_t kVersion = 1;

Embedding normalized_query(std::span<const double> query, std::size_t dim) {
  require_dim(query, dim, "query");
  try {
    return normalized(query);
  } catch (const ValidationError&) {
    throw ValidationError("query vector is zero or non-finite");
  }
}

std::vector<ScoredDocument> top_n(std::vector<ScoredDocument> all, std::size_t n) {
  n = std::min(n, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n), all.end(), ranks_before);
  all.resize(n);
  return all;
}

}  // namespace

bool ranks_before(const ScoredDocument& a, const ScoredDocument& b) {
  return a.score > b.score || (a.score == b.score && a.paper_id < b.paper_id);
}

std::string to_string(Backend b) { return b == Backend::kExact ? "exact" : "hnsw"; }

Backend parse_backend(const std::string& name) {
  if (name == "exact") return Backend::kExact;
  if (name == "hnsw") return Backend::kHnsw;
  throw ArgumentError("unknown index backend '" + name + "' (expected exact or hnsw)");
}

VectorIndex VectorIndex::build(const std::map<std::string, Embedding>& embeddings, Backend backend,
                               HnswParams params) {
  VectorIndex index;
  index.backend_ = backend;
  index.params_ = params;
  index.dim_ = embeddings.empty() ? 0 : embeddings.begin()->second.size();
  index.ids_.reserve(embeddings.size());
  index.data_.reserve(embeddings.size() * index.dim_);
  for (const auto& [id, v] : embeddings) {
    require_dim(v, index.dim_, "paper " + id);
    Embedding unit;
    try {
      unit = normalized(v);
    } catch (const ValidationError&) {
      throw ValidationError("paper " + id + " has a zero or non-finite embedding");
    }
    index.ids_.push_back(id);
    index.data_.insert(index.data_.end(), unit.begin(), unit.end());
  }
  if (backend == Backend::kHnsw) {
    HnswGraph graph(params);
    const auto block = index.block();
    for (std::size_t i = 0; i < index.ids_.size(); ++i) graph.add(block);
    index.graph_ = std::move(graph);
  }
  return index;
}

std::vector<ScoredDocument> VectorIndex::search(std::span<const double> query, std::size_t n) const {
  if (n == 0 || ids_.empty()) return {};
  const auto q = normalized_query(query, dim_);
  if (backend_ == Backend::kHnsw) {
    std::vector<ScoredDocument> out;
    for (const auto& [sim, node] : graph_->search(block(), q, n, params_.ef_search))
      out.push_back({ids_[node], sim});
    std::sort(out.begin(), out.end(), ranks_before);
    return out;
  }
  std::vector<ScoredDocument> all;
  all.reserve(ids_.size());
  for (std::size_t i = 0; i < ids_.size(); ++i) all.push_back({ids_[i], dot(vector(i), q)});
  return top_n(std::move(all), n);
}

std::vector<ScoredDocument> exact_oracle(const std::map<std::string, Embedding>& embeddings,
                                         std::span<const double> query, std::size_t n) {
  if (n == 0 || embeddings.empty()) return {};
  const auto q = normalized_query(query, embeddings.begin()->second.size());
  std::vector<ScoredDocument> all;
  for (const auto& [id, v] : embeddings) {
    require_dim(v, q.size(), "paper " + id);
    all.push_back({id, dot(normalized(v), q)});
  }
  std::sort(all.begin(), all.end(), ranks_before);
  all.resize(std::min(n, all.size()));
  return all;
}

std::vector<char> VectorIndex::serialize() const {
  detail::ByteWriter out;
  out.bytes(kMagic);
  out.uint(kVersion);
  out.uint(static_cast<std::uint8_t>(backend_));
  out.uint(static_cast<std::uint32_t>(dim_));
  out.uint(static_cast<std::uint64_t>(ids_.size()));
  out.uint(params_.m);
  out.uint(params_.ef_construction);
  out.uint(params_.ef_search);
  out.uint(params_.seed);
  for (const auto& id : ids_) out.string(id);
  for (double x : data_) out.f64(x);
  if (graph_) {
    out.uint(static_cast<std::uint32_t>(graph_->max_level() + 1));
    out.uint(graph_->entry_point());
    for (const auto& node : graph_->links()) {
      out.uint(static_cast<std::uint32_t>(node.size()));
      for (const auto& level : node) {
        out.uint(static_cast<std::uint32_t>(level.size()));
        for (auto nb : level) out.uint(nb);
      }
    }
  }
  return out.data();
}

void VectorIndex::save(const std::filesystem::path& path) const {
  detail::ByteWriter out;
  const auto bytes = serialize();
  out.bytes(std::string_view(bytes.data(), bytes.size()));
  out.save(path);
}

VectorIndex VectorIndex::load(const std::filesystem::path& path) {
  auto in = detail::ByteReader::from_file(path);
  if (in.remaining() < kMagic.size() || in.bytes(kMagic.size(), "magic") != kMagic)
    throw FormatError(0, "bad magic, expected VIDX");
  const auto version_offset = in.offset();
  if (in.uint<std::uint32_t>("version") != kVersion) throw FormatError(version_offset, "unsupported VIDX version");
  VectorIndex index;
  const auto backend_offset = in.offset();
  const auto backend = in.uint<std::uint8_t>("backend");
  if (backend > 1) throw FormatError(backend_offset, "unknown backend tag");
  index.backend_ = static_cast<Backend>(backend);
  index.dim_ = in.uint<std::uint32_t>("dim");
  const auto count = in.uint<std::uint64_t>("count");
  index.params_.m = in.uint<std::uint32_t>("M");
  index.params_.ef_construction = in.uint<std::uint32_t>("ef_construction");
  index.params_.ef_search = in.uint<std::uint32_t>("ef_search");
  index.params_.seed = in.uint<std::uint64_t>("seed");
  for (std::uint64_t i = 0; i < count; ++i) index.ids_.push_back(in.string("id"));
  index.data_.resize(count * index.dim_);
  for (auto& x : index.data_) x = in.f64("vector block");

  if (index.backend_ == Backend::kHnsw) {
    const auto levels = in.uint<std::uint32_t>("max level");
    const auto entry = in.uint<std::uint32_t>("entry point");
    std::vector<std::vector<std::vector<std::uint32_t>>> links(count);
    for (auto& node : links) {
      node.resize(in.uint<std::uint32_t>("node level count"));
      for (auto& level : node) {
        level.resize(in.uint<std::uint32_t>("degree"));
        for (auto& nb : level) nb = in.uint<std::uint32_t>("neighbour");
      }
    }
    try {
      index.graph_ = HnswGraph::from_links(index.params_, std::move(links), entry, static_cast<int>(levels) - 1);
    } catch (const ValidationError& e) {
      throw FormatError(in.offset(), e.what());
    }
  }
  if (!in.at_end()) throw FormatError(in.offset(), "trailing bytes");
  return index;
}

}  // namespace expertvote
