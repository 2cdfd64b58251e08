#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "expertvote/embedding.hpp"

namespace expertvote {

/// Title vector plus abstract sentence vectors (in sentence order) of one paper.
struct SentenceEmbeddingSet {
  std::string paper_id;
  Embedding title_embedding;
  std::vector<Embedding> abstract_embeddings;
};

enum class SentenceRole : std::uint8_t { kTitle = 0, kAbstract = 1 };

/// One EMB1 record as stored on disk.
struct Emb1Record {
  std::string id;
  SentenceRole role = SentenceRole::kTitle;
  std::uint16_t sentence_index = 0;
  std::vector<float> values;
  std::uint64_t offset = 0;  // where the record started; set by read_emb1 only
};

/// EMB1 layout (little-endian): "EMB1", u32 dim, then records of
/// [u32 id_len | id bytes | u8 role | u16 sentence_index | dim x f32].
struct Emb1File {
  std::uint32_t dim = 0;
  std::vector<Emb1Record> records;
};

/// Throws FormatError with the byte offset of the first bad field.
Emb1File read_emb1(const std::filesystem::path& path);
void write_emb1(const Emb1File& file, const std::filesystem::path& path);

/// Groups records per paper. Every paper needs exactly one title record and
/// unique abstract sentence indices.
std::map<std::string, SentenceEmbeddingSet> load_sentence_embeddings(const std::filesystem::path& path);

/// Single-vector-per-id files (paper embeddings, query and tag sidecars):
/// every record is role 0. Duplicate ids are a format error.
std::map<std::string, Embedding> load_vector_file(const std::filesystem::path& path);
void save_vector_file(const std::map<std::string, Embedding>& vectors, std::size_t dim,
                      const std::filesystem::path& path);

}  // namespace expertvote
