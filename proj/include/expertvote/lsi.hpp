#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "expertvote/embedding.hpp"

namespace expertvote {

/// TF-IDF vocabulary plus the rank-k right singular subspace of the training
/// TF-IDF matrix. tf is the raw count, idf = ln(N / df).
struct LsiModel {
  std::map<std::string, std::size_t, std::less<>> vocabulary;  // token -> row of projection
  std::vector<double> idf;                                     // per vocabulary entry
  std::vector<double> projection;                              // vocab_size x k, row-major
  std::size_t k = 0;                                           // effective dimension

  std::size_t vocab_size() const { return idf.size(); }
  double projection_at(std::size_t row, std::size_t col) const { return projection[row * k + col]; }
};

/// Fits on already-cleaned documents. The effective dimension is
/// min(k, rank of the TF-IDF matrix). Throws FitError when the vocabulary is
/// empty or every TF-IDF weight is zero.
LsiModel lsi_fit(const std::vector<std::string>& documents, std::size_t k);

/// Projects a cleaned document; tokens outside the vocabulary are ignored.
Embedding lsi_embed(const LsiModel& model, std::string_view document);

/// Sparse TF-IDF row over the model vocabulary as (column, weight) pairs.
std::vector<std::pair<std::size_t, double>> tfidf_row(const LsiModel& model, std::string_view document);

void save_lsi_model(const LsiModel& model, const std::filesystem::path& path);
LsiModel load_lsi_model(const std::filesystem::path& path);

}  // namespace expertvote
