#include "expertvote/lsi.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <set>

#include "binary_io.hpp"
#include "expertvote/errors.hpp"
#include "expertvote/text.hpp"

namespace expertvote {
namespace {

constexpr std::string_view kMagic = "LSI1";
// Singular values below this fraction of the largest are treated as zero.
constexpr double kRankTolerance = 1e-6;

using SparseRows = Eigen::SparseMatrix<double, Eigen::RowMajor>;

std::map<std::size_t, double> term_counts(const LsiModel& model, std::string_view document) {
  std::map<std::size_t, double> counts;
  for (const auto& token : tokenize(document)) {
    auto it = model.vocabulary.find(token);
    if (it != model.vocabulary.end()) counts[it->second] += 1.0;
  }
  return counts;
}

// Flip each column so its largest-magnitude entry is positive.
void canonical_signs(Eigen::MatrixXd& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    Eigen::Index arg = 0;
    m.col(j).cwiseAbs().maxCoeff(&arg);
    if (m(arg, j) < 0) m.col(j) *= -1.0;
  }
}

}  // namespace

std::vector<std::pair<std::size_t, double>> tfidf_row(const LsiModel& model, std::string_view document) {
  std::vector<std::pair<std::size_t, double>> row;
  for (const auto& [col, tf] : term_counts(model, document)) {
    const double w = tf * model.idf[col];
    if (w != 0.0) row.emplace_back(col, w);
  }
  return row;
}

LsiModel lsi_fit(const std::vector<std::string>& documents, std::size_t k) {
  if (documents.empty()) throw FitError("LSI needs at least one document");
  if (k == 0) throw ArgumentError("LSI dimension must be at least 1");

  LsiModel model;
  std::vector<std::vector<std::string>> tokenized;
  tokenized.reserve(documents.size());
  std::map<std::string, std::size_t> df;
  for (const auto& doc : documents) {
    tokenized.push_back(tokenize(doc));
    std::set<std::string_view> unique(tokenized.back().begin(), tokenized.back().end());
    for (auto t : unique) ++df[std::string(t)];
  }
  if (df.empty()) throw FitError("empty vocabulary");

  const double n_docs = static_cast<double>(documents.size());
  for (const auto& [token, count] : df) {
    model.vocabulary.emplace(token, model.idf.size());
    model.idf.push_back(std::log(n_docs / static_cast<double>(count)));
  }
  const auto n = static_cast<Eigen::Index>(documents.size());
  const auto v = static_cast<Eigen::Index>(model.idf.size());

  std::vector<Eigen::Triplet<double>> triplets;
  for (Eigen::Index i = 0; i < n; ++i) {
    std::map<std::size_t, double> counts;
    for (const auto& t : tokenized[static_cast<std::size_t>(i)]) counts[model.vocabulary.find(t)->second] += 1.0;
    for (const auto& [col, tf] : counts) {
      const double w = tf * model.idf[col];
      if (w != 0.0) triplets.emplace_back(i, static_cast<Eigen::Index>(col), w);
    }
  }
  if (triplets.empty()) throw FitError("TF-IDF matrix is zero (every token occurs in every document)");
  SparseRows a(n, v);
  a.setFromTriplets(triplets.begin(), triplets.end());

  // Eigen-decompose the smaller Gram matrix; its eigenvalues are sigma^2.
  const bool rows_smaller = n <= v;
  Eigen::MatrixXd gram = rows_smaller ? Eigen::MatrixXd(a * a.transpose()) : Eigen::MatrixXd(a.transpose() * a);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  if (eig.info() != Eigen::Success) throw FitError("eigendecomposition failed");
  const Eigen::VectorXd& lambda = eig.eigenvalues();  // ascending
  const double lambda_max = lambda(lambda.size() - 1);
  Eigen::Index rank = 0;
  for (Eigen::Index i = lambda.size() - 1; i >= 0; --i) {
    if (lambda(i) > lambda_max * kRankTolerance * kRankTolerance) ++rank;
  }
  const Eigen::Index kept = std::min<Eigen::Index>(static_cast<Eigen::Index>(k), rank);

  Eigen::MatrixXd basis(lambda.size(), kept);
  Eigen::VectorXd sigma(kept);
  for (Eigen::Index j = 0; j < kept; ++j) {
    const Eigen::Index src = lambda.size() - 1 - j;
    basis.col(j) = eig.eigenvectors().col(src);
    sigma(j) = std::sqrt(lambda(src));
  }

  Eigen::MatrixXd projection;
  if (rows_smaller) {
    projection = a.transpose() * basis;  // V x kept, columns scaled by sigma
    for (Eigen::Index j = 0; j < kept; ++j) projection.col(j) /= sigma(j);
  } else {
    projection = basis;
  }

  // Restore exact orthonormality lost to rounding in A^T U / sigma.
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(projection);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(projection.rows(), kept);
  const Eigen::MatrixXd r = qr.matrixQR().topLeftCorner(kept, kept);
  for (Eigen::Index j = 0; j < kept; ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;
  canonical_signs(q);

  model.k = static_cast<std::size_t>(kept);
  model.projection.resize(static_cast<std::size_t>(v * kept));
  for (Eigen::Index row = 0; row < v; ++row)
    for (Eigen::Index col = 0; col < kept; ++col)
      model.projection[static_cast<std::size_t>(row * kept + col)] = q(row, col);
  return model;
}

Embedding lsi_embed(const LsiModel& model, std::string_view document) {
  Embedding out(model.k, 0.0);
  for (const auto& [col, w] : tfidf_row(model, document)) {
    const double* proj = model.projection.data() + col * model.k;
    for (std::size_t j = 0; j < model.k; ++j) out[j] += w * proj[j];
  }
  return out;
}

void save_lsi_model(const LsiModel& model, const std::filesystem::path& path) {
  detail::ByteWriter out;
  out.bytes(kMagic);
  out.uint(static_cast<std::uint32_t>(model.k));
  out.uint(static_cast<std::uint32_t>(model.vocab_size()));
  std::vector<const std::string*> by_index(model.vocab_size());
  for (const auto& [token, idx] : model.vocabulary) by_index[idx] = &token;
  for (std::size_t i = 0; i < by_index.size(); ++i) {
    out.string(*by_index[i]);
    out.f64(model.idf[i]);
  }
  for (double x : model.projection) out.f64(x);
  out.save(path);
}

LsiModel load_lsi_model(const std::filesystem::path& path) {
  auto in = detail::ByteReader::from_file(path);
  if (in.remaining() < kMagic.size() || in.bytes(kMagic.size(), "magic") != kMagic)
    throw FormatError(0, "bad magic, expected LSI1");
  LsiModel model;
  model.k = in.uint<std::uint32_t>("k");
  const auto vocab = in.uint<std::uint32_t>("vocabulary size");
  for (std::uint32_t i = 0; i < vocab; ++i) {
    const auto offset = in.offset();
    auto token = in.string("token");
    model.idf.push_back(in.f64("idf"));
    if (!model.vocabulary.emplace(std::move(token), i).second) throw FormatError(offset, "duplicate token");
  }
  model.projection.resize(static_cast<std::size_t>(vocab) * model.k);
  for (auto& x : model.projection) x = in.f64("projection");
  if (!in.at_end()) throw FormatError(in.offset(), "trailing bytes");
  return model;
}

}  // namespace expertvote
