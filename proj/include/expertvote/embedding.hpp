#pragma once

#include <span>
#include <string>
#include <vector>

namespace expertvote {

/// A dense real vector representing a sentence, paper, query or tag.
using Embedding = std::vector<double>;

double dot(std::span<const double> a, std::span<const double> b);
double l2_norm(std::span<const double> v);

/// Cosine similarity; 0 when either side is the zero vector.
double cosine(std::span<const double> a, std::span<const double> b);

/// Unit-length copy. Throws ValidationError on a zero or non-finite vector.
Embedding normalized(std::span<const double> v);

/// Element-wise mean. Throws ValidationError on empty input or dim mismatch.
Embedding mean_of(std::span<const Embedding> vectors);

bool all_finite(std::span<const double> v);

/// Throws ValidationError naming `what` when dims differ.
void require_dim(std::span<const double> v, std::size_t dim, const std::string& what);

}  // namespace expertvote
