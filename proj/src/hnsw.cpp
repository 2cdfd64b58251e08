#include "expertvote/hnsw.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>

#include "expertvote/embedding.hpp"
#include "expertvote/errors.hpp"

namespace expertvote {
namespace {

using Hit = HnswGraph::Hit;

// Descending similarity, ascending node id.
bool better(const Hit& a, const Hit& b) { return a.first > b.first || (a.first == b.first && a.second < b.second); }

}  // namespace

HnswGraph::HnswGraph(HnswParams params)
    : params_(params), level_mult_(1.0 / std::log(std::max<double>(2.0, params.m))), rng_(params.seed) {
  if (params_.m < 2) throw ArgumentError("HNSW M must be at least 2");
  if (params_.ef_construction < 1 || params_.ef_search < 1) throw ArgumentError("HNSW ef must be positive");
}

std::size_t HnswGraph::max_degree(int level) const { return level == 0 ? 2 * params_.m : params_.m; }

int HnswGraph::random_level() {
  double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  if (u <= 0.0) u = 0x1.0p-53;
  return static_cast<int>(std::floor(-std::log(u) * level_mult_));
}

std::vector<Hit> HnswGraph::search_layer(const VectorBlock& block, std::span<const double> query,
                                         const std::vector<std::uint32_t>& entries, std::size_t ef,
                                         int level) const {
  std::vector<std::uint8_t> visited(links_.size(), 0);
  // candidates: best on top; results: worst on top
  std::priority_queue<Hit, std::vector<Hit>, decltype(&better)> results(&better);
  auto worse = [](const Hit& a, const Hit& b) { return better(b, a); };
  std::priority_queue<Hit, std::vector<Hit>, decltype(worse)> candidates(worse);

  for (auto e : entries) {
    if (visited[e]) continue;
    visited[e] = 1;
    const Hit h{dot(block.row(e), query), e};
    candidates.push(h);
    results.push(h);
    if (results.size() > ef) results.pop();
  }

  while (!candidates.empty()) {
    const Hit current = candidates.top();
    if (results.size() >= ef && better(results.top(), current)) break;
    candidates.pop();
    const auto& adjacency = links_[current.second];
    if (static_cast<int>(adjacency.size()) <= level) continue;
    for (auto nb : adjacency[static_cast<std::size_t>(level)]) {
      if (visited[nb]) continue;
      visited[nb] = 1;
      const Hit h{dot(block.row(nb), query), nb};
      if (results.size() < ef || better(h, results.top())) {
        candidates.push(h);
        results.push(h);
        if (results.size() > ef) results.pop();
      }
    }
  }

  std::vector<Hit> out;
  out.reserve(results.size());
  while (!results.empty()) {
    out.push_back(results.top());
    results.pop();
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<std::uint32_t> HnswGraph::select_neighbors(const VectorBlock& block, std::vector<Hit> candidates,
                                                       std::size_t m) const {
  std::sort(candidates.begin(), candidates.end(), better);
  std::vector<std::uint32_t> chosen;
  if (candidates.size() <= m) {
    for (const auto& c : candidates) chosen.push_back(c.second);
    return chosen;
  }
  // Keep a candidate only if it is closer to the base than to every neighbour
  // already kept; this spreads links across directions.
  for (const auto& c : candidates) {
    if (chosen.size() >= m) break;
    const auto cv = block.row(c.second);
    const bool diverse = std::all_of(chosen.begin(), chosen.end(),
                                     [&](std::uint32_t r) { return dot(cv, block.row(r)) <= c.first; });
    if (diverse) chosen.push_back(c.second);
  }
  return chosen;
}

void HnswGraph::add(const VectorBlock& block) {
  const auto node = static_cast<std::uint32_t>(links_.size());
  const int level = random_level();
  links_.emplace_back(static_cast<std::size_t>(level) + 1);
  const auto query = block.row(node);

  if (max_level_ < 0) {
    entry_ = node;
    max_level_ = level;
    return;
  }

  std::uint32_t ep = entry_;
  double ep_sim = dot(block.row(ep), query);
  for (int l = max_level_; l > level; --l) {
    for (bool moved = true; moved;) {
      moved = false;
      for (auto nb : links_[ep][static_cast<std::size_t>(l)]) {
        const double s = dot(block.row(nb), query);
        if (s > ep_sim) {
          ep_sim = s;
          ep = nb;
          moved = true;
        }
      }
    }
  }

  std::vector<std::uint32_t> entries{ep};
  for (int l = std::min(level, max_level_); l >= 0; --l) {
    const auto found = search_layer(block, query, entries, params_.ef_construction, l);
    const auto lvl = static_cast<std::size_t>(l);
    links_[node][lvl] = select_neighbors(block, found, params_.m);
    for (auto nb : links_[node][lvl]) {
      auto& back = links_[nb][lvl];
      back.push_back(node);
      if (back.size() > max_degree(l)) {
        std::vector<Hit> pool;
        pool.reserve(back.size());
        const auto nv = block.row(nb);
        for (auto x : back) pool.emplace_back(dot(nv, block.row(x)), x);
        back = select_neighbors(block, std::move(pool), max_degree(l));
      }
    }
    entries.clear();
    for (const auto& h : found) entries.push_back(h.second);
  }

  if (level > max_level_) {
    entry_ = node;
    max_level_ = level;
  }
}

std::vector<Hit> HnswGraph::search(const VectorBlock& block, std::span<const double> query, std::size_t k,
                                   std::size_t ef) const {
  if (links_.empty() || k == 0) return {};
  std::uint32_t ep = entry_;
  double ep_sim = dot(block.row(ep), query);
  for (int l = max_level_; l > 0; --l) {
    for (bool moved = true; moved;) {
      moved = false;
      for (auto nb : links_[ep][static_cast<std::size_t>(l)]) {
        const double s = dot(block.row(nb), query);
        if (s > ep_sim) {
          ep_sim = s;
          ep = nb;
          moved = true;
        }
      }
    }
  }
  auto found = search_layer(block, query, {ep}, std::max(ef, k), 0);
  if (found.size() > k) found.resize(k);
  return found;
}

HnswGraph HnswGraph::from_links(HnswParams params, std::vector<std::vector<std::vector<std::uint32_t>>> links,
                                std::uint32_t entry, int max_level) {
  HnswGraph g(params);
  const auto n = links.size();
  if (n > 0) {
    if (entry >= n) throw ValidationError("HNSW entry point out of range");
    if (max_level < 0 || links[entry].size() != static_cast<std::size_t>(max_level) + 1)
      throw ValidationError("HNSW entry point level mismatch");
  }
  for (const auto& node : links) {
    if (node.empty()) throw ValidationError("HNSW node without level 0");
    for (const auto& level : node)
      for (auto nb : level)
        if (nb >= n) throw ValidationError("HNSW neighbour id out of range");
  }
  g.links_ = std::move(links);
  g.entry_ = entry;
  g.max_level_ = n > 0 ? max_level : -1;
  return g;
}

}  // namespace expertvote
