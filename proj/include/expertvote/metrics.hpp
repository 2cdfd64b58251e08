#pragma once

#include <vector>

namespace expertvote {

// Rank-based metrics over a relevance (or grade) sequence in ranked order.
// Positions past the end of a list count as non-relevant.

/// 1/rank of the first relevant entry, 0 if there is none.
double reciprocal_rank(const std::vector<bool>& relevance);

/// Relevant entries among the first n, divided by n. Throws ArgumentError if n < 1.
double precision_at_n(const std::vector<bool>& relevance, int n);

/// Mean of precision@k over the relevant ranks k <= n; the denominator is the
/// number of relevant entries inside the top n. Throws ArgumentError if n < 1.
double average_precision_at_n(const std::vector<bool>& relevance, int n);

/// sum_{i=1..n} (2^grade_i - 1) / log2(i + 1).
double dcg_at_n(const std::vector<int>& grades, int n);

/// DCG@n / idcg clamped to [0, 1]. Throws ArgumentError if idcg <= 0 or n < 1.
double ndcg_at_n(const std::vector<int>& grades, double idcg, int n);

}  // namespace expertvote
