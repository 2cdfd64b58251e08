#include "expertvote/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "expertvote/errors.hpp"

namespace expertvote {
namespace {

void require_cutoff(int n) {
  if (n < 1) throw ArgumentError("cutoff must be at least 1");
}

}  // namespace

double reciprocal_rank(const std::vector<bool>& relevance) {
  for (std::size_t i = 0; i < relevance.size(); ++i)
    if (relevance[i]) return 1.0 / static_cast<double>(i + 1);
  return 0.0;
}

double precision_at_n(const std::vector<bool>& relevance, int n) {
  require_cutoff(n);
  const auto limit = std::min(relevance.size(), static_cast<std::size_t>(n));
  const auto hits = std::count(relevance.begin(), relevance.begin() + static_cast<std::ptrdiff_t>(limit), true);
  return static_cast<double>(hits) / n;
}

double average_precision_at_n(const std::vector<bool>& relevance, int n) {
  require_cutoff(n);
  const auto limit = std::min(relevance.size(), static_cast<std::size_t>(n));
  double sum = 0.0;
  int hits = 0;
  for (std::size_t i = 0; i < limit; ++i) {
    if (!relevance[i]) continue;
    ++hits;
    sum += static_cast<double>(hits) / static_cast<double>(i + 1);
  }
  return hits == 0 ? 0.0 : sum / hits;
}

double dcg_at_n(const std::vector<int>& grades, int n) {
  require_cutoff(n);
  const auto limit = std::min(grades.size(), static_cast<std::size_t>(n));
  double dcg = 0.0;
  for (std::size_t i = 0; i < limit; ++i)
    dcg += (std::exp2(static_cast<double>(grades[i])) - 1.0) / std::log2(static_cast<double>(i) + 2.0);
  return dcg;
}

double ndcg_at_n(const std::vector<int>& grades, double idcg, int n) {
  if (!(idcg > 0.0)) throw ArgumentError("IDCG must be positive");
  return std::clamp(dcg_at_n(grades, n) / idcg, 0.0, 1.0);
}

}  // namespace expertvote
