#include "expertvote/emb1.hpp"

#include <set>

#include "binary_io.hpp"
#include "expertvote/errors.hpp"

namespace expertvote {

namespace {
constexpr std::string_view kMagic = "EMB1";
}

Emb1File read_emb1(const std::filesystem::path& path) {
  auto in = detail::ByteReader::from_file(path);
  if (in.remaining() < kMagic.size() || in.bytes(kMagic.size(), "magic") != kMagic)
    throw FormatError(0, "bad magic, expected EMB1");
  Emb1File file;
  file.dim = in.uint<std::uint32_t>("dim");
  if (file.dim == 0) throw FormatError(kMagic.size(), "dim must be positive");

  while (!in.at_end()) {
    const auto record_offset = in.offset();
    Emb1Record rec;
    rec.offset = record_offset;
    rec.id = in.string("record id");
    if (rec.id.empty()) throw FormatError(record_offset, "empty record id");
    const auto role_offset = in.offset();
    const auto role = in.uint<std::uint8_t>("role");
    if (role > 1) throw FormatError(role_offset, "unknown role " + std::to_string(role));
    rec.role = static_cast<SentenceRole>(role);
    rec.sentence_index = in.uint<std::uint16_t>("sentence index");
    rec.values.resize(file.dim);
    for (auto& v : rec.values) v = in.f32("vector");
    file.records.push_back(std::move(rec));
  }
  return file;
}

void write_emb1(const Emb1File& file, const std::filesystem::path& path) {
  detail::ByteWriter out;
  out.bytes(kMagic);
  out.uint(file.dim);
  for (const auto& rec : file.records) {
    if (rec.values.size() != file.dim) throw ValidationError("record " + rec.id + " has wrong dimension");
    out.string(rec.id);
    out.uint(static_cast<std::uint8_t>(rec.role));
    out.uint(rec.sentence_index);
    for (float v : rec.values) out.f32(v);
  }
  out.save(path);
}

std::map<std::string, SentenceEmbeddingSet> load_sentence_embeddings(const std::filesystem::path& path) {
  const auto file = read_emb1(path);
  struct Pending {
    std::uint64_t first_offset = 0;
    bool seen = false;
    bool has_title = false;
    Embedding title;
    std::map<std::uint16_t, Embedding> sentences;
  };
  std::map<std::string, Pending> pending;
  for (const auto& rec : file.records) {
    auto& p = pending[rec.id];
    if (!p.seen) {
      p.seen = true;
      p.first_offset = rec.offset;
    }
    Embedding v(rec.values.begin(), rec.values.end());
    if (rec.role == SentenceRole::kTitle) {
      if (p.has_title) throw FormatError(rec.offset, "paper " + rec.id + " has more than one title record");
      p.has_title = true;
      p.title = std::move(v);
    } else if (!p.sentences.emplace(rec.sentence_index, std::move(v)).second) {
      throw FormatError(rec.offset, "paper " + rec.id + " repeats abstract sentence " + std::to_string(rec.sentence_index));
    }
  }

  std::map<std::string, SentenceEmbeddingSet> out;
  for (auto& [id, p] : pending) {
    if (!p.has_title) throw FormatError(p.first_offset, "paper " + id + " has no title record");
    SentenceEmbeddingSet set{id, std::move(p.title), {}};
    for (auto& [idx, v] : p.sentences) set.abstract_embeddings.push_back(std::move(v));
    out.emplace(id, std::move(set));
  }
  return out;
}

std::map<std::string, Embedding> load_vector_file(const std::filesystem::path& path) {
  const auto file = read_emb1(path);
  std::map<std::string, Embedding> out;
  for (const auto& rec : file.records) {
    if (!out.emplace(rec.id, Embedding(rec.values.begin(), rec.values.end())).second)
      throw FormatError(rec.offset, "duplicate id " + rec.id + " in " + path.string());
  }
  return out;
}

void save_vector_file(const std::map<std::string, Embedding>& vectors, std::size_t dim,
                      const std::filesystem::path& path) {
  Emb1File file;
  file.dim = static_cast<std::uint32_t>(dim);
  for (const auto& [id, v] : vectors) {
    require_dim(v, dim, "vector " + id);
    file.records.push_back({id, SentenceRole::kTitle, 0, std::vector<float>(v.begin(), v.end())});
  }
  write_emb1(file, path);
}

}  // namespace expertvote
