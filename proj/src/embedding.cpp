#include "expertvote/embedding.hpp"

#include <cmath>

#include "expertvote/errors.hpp"

namespace expertvote {

double dot(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

double l2_norm(std::span<const double> v) { return std::sqrt(dot(v, v)); }

double cosine(std::span<const double> a, std::span<const double> b) {
  const double na = l2_norm(a);
  const double nb = l2_norm(b);
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot(a, b) / (na * nb);
}

Embedding normalized(std::span<const double> v) {
  const double n = l2_norm(v);
  if (!(n > 0.0) || !std::isfinite(n)) throw ValidationError("cannot normalize a zero or non-finite vector");
  Embedding out(v.begin(), v.end());
  for (auto& x : out) x /= n;
  return out;
}

Embedding mean_of(std::span<const Embedding> vectors) {
  if (vectors.empty()) throw ValidationError("mean of an empty vector set");
  const std::size_t dim = vectors.front().size();
  Embedding sum(dim, 0.0);
  for (const auto& v : vectors) {
    require_dim(v, dim, "mean_of operand");
    for (std::size_t i = 0; i < dim; ++i) sum[i] += v[i];
  }
  const double n = static_cast<double>(vectors.size());
  for (auto& x : sum) x /= n;
  return sum;
}

bool all_finite(std::span<const double> v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

void require_dim(std::span<const double> v, std::size_t dim, const std::string& what) {
  if (v.size() != dim)
    throw ValidationError(what + ": dimension " + std::to_string(v.size()) + " != " + std::to_string(dim));
}

}  // namespace expertvote
