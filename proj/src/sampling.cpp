#include "expertvote/sampling.hpp"

#include <algorithm>
#include <limits>
#include <random>

#include "expertvote/errors.hpp"

namespace expertvote {
namespace {

// Unbiased draw in [0, bound) by rejection; std::uniform_int_distribution is
// implementation-defined, which would make samples differ across toolchains.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace

int stratum_of(std::int64_t n_pubs) {
  int bin = -1;
  for (std::size_t i = 0; i < kStratumLowerBounds.size(); ++i)
    if (n_pubs >= kStratumLowerBounds[i]) bin = static_cast<int>(i);
  return bin;
}

std::int64_t stratum_allocation(std::int64_t bin_size, std::int64_t total, std::int64_t sample_size) {
  if (total <= 0) return 0;
  return bin_size * sample_size / total;
}

std::vector<AuthorRecord> sampling_candidates(const Corpus& corpus) {
  std::vector<AuthorRecord> out;
  for (const auto& [id, author] : corpus.authors) {
    const bool has_reference = std::any_of(author.paper_ids.begin(), author.paper_ids.end(), [&](const auto& pid) {
      const auto* paper = corpus.find_paper(pid);
      return paper && std::any_of(paper->references.begin(), paper->references.end(),
                                  [&](const auto& ref) { return corpus.papers.contains(ref); });
    });
    if (has_reference) out.push_back(author);
  }
  return out;
}

std::vector<std::string> stratified_author_sample(const std::vector<AuthorRecord>& authors,
                                                  std::int64_t sample_size, std::uint64_t seed) {
  if (sample_size <= 0) throw ArgumentError("sample_size must be positive");

  std::array<std::vector<std::string>, kStratumLowerBounds.size()> bins;
  for (const auto& a : authors) {
    const int bin = stratum_of(a.n_pubs);
    if (bin >= 0) bins[bin].push_back(a.author_id);
  }
  std::int64_t total = 0;
  for (auto& bin : bins) {
    std::sort(bin.begin(), bin.end());
    total += static_cast<std::int64_t>(bin.size());
  }

  std::vector<std::string> sample;
  if (total <= sample_size) {
    for (const auto& bin : bins) sample.insert(sample.end(), bin.begin(), bin.end());
  } else {
    std::mt19937_64 rng(seed);
    for (auto& bin : bins) {
      const auto take = static_cast<std::size_t>(
          stratum_allocation(static_cast<std::int64_t>(bin.size()), total, sample_size));
      // partial Fisher-Yates
      for (std::size_t i = 0; i < take; ++i) {
        const auto j = i + draw_below(rng, bin.size() - i);
        std::swap(bin[i], bin[j]);
      }
      sample.insert(sample.end(), bin.begin(), bin.begin() + static_cast<std::ptrdiff_t>(take));
    }
  }
  std::sort(sample.begin(), sample.end());
  return sample;
}

}  // namespace expertvote
