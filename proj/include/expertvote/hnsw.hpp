#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace expertvote {

struct HnswParams {
  std::uint32_t m = 32;
  std::uint32_t ef_construction = 200;
  std::uint32_t ef_search = 128;
  std::uint64_t seed = 42;
};

/// Row-major block of unit vectors that a graph indexes by position.
struct VectorBlock {
  std::span<const double> data;
  std::size_t dim = 0;

  std::span<const double> row(std::uint32_t i) const { return data.subspan(std::size_t{i} * dim, dim); }
};

/// Hierarchical navigable small-world graph over inner-product similarity.
/// Nodes are inserted in increasing id order; levels come from a seeded
/// generator, so a graph is a pure function of (vectors, params).
class HnswGraph {
 public:
  using Hit = std::pair<double, std::uint32_t>;  // (similarity, node)

  HnswGraph() = default;
  explicit HnswGraph(HnswParams params);

  /// Inserts node `size()`; the block must already contain its vector.
  void add(const VectorBlock& block);

  /// Up to k nodes by descending similarity (ties by node id).
  std::vector<Hit> search(const VectorBlock& block, std::span<const double> query, std::size_t k,
                          std::size_t ef) const;

  std::size_t size() const { return links_.size(); }
  int max_level() const { return max_level_; }
  std::uint32_t entry_point() const { return entry_; }
  const HnswParams& params() const { return params_; }

  /// links()[node][level] -> neighbour ids.
  const std::vector<std::vector<std::vector<std::uint32_t>>>& links() const { return links_; }

  /// Rebuilds a graph from persisted adjacency. Throws ValidationError on
  /// out-of-range ids.
  static HnswGraph from_links(HnswParams params, std::vector<std::vector<std::vector<std::uint32_t>>> links,
                              std::uint32_t entry, int max_level);

 private:
  std::vector<Hit> search_layer(const VectorBlock& block, std::span<const double> query,
                                const std::vector<std::uint32_t>& entries, std::size_t ef, int level) const;
  std::vector<std::uint32_t> select_neighbors(const VectorBlock& block, std::vector<Hit> candidates,
                                              std::size_t m) const;
  std::size_t max_degree(int level) const;
  int random_level();

  HnswParams params_;
  double level_mult_ = 0.0;
  std::mt19937_64 rng_;
  std::vector<std::vector<std::vector<std::uint32_t>>> links_;
  std::uint32_t entry_ = 0;
  int max_level_ = -1;
};

}  // namespace expertvote
