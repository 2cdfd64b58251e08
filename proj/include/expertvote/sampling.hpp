#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "expertvote/corpus.hpp"

namespace expertvote {

/// Publication-count strata: [5,10), [10,50), [50,100), [100,inf).
inline constexpr std::array<std::int64_t, 4> kStratumLowerBounds{5, 10, 50, 100};

/// Index of the stratum for a publication count, or -1 below the first bound.
int stratum_of(std::int64_t n_pubs);

/// Proportionate allocation, floor(bin_size * sample_size / total).
std::int64_t stratum_allocation(std::int64_t bin_size, std::int64_t total, std::int64_t sample_size);

/// Authors having at least one paper with a reference that resolves inside the corpus.
std::vector<AuthorRecord> sampling_candidates(const Corpus& corpus);

/// Stratified sample of author ids (sorted). Authors under 5 publications are
/// never drawn. Throws ArgumentError when sample_size <= 0.
std::vector<std::string> stratified_author_sample(const std::vector<AuthorRecord>& authors,
                                                  std::int64_t sample_size, std::uint64_t seed);

}  // namespace expertvote
