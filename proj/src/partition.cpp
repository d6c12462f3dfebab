#include "ejcm/partition.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <tuple>

#include "ejcm/rng.hpp"

namespace ejcm {

CommutingPartition partition_structured(const TaggedSum& h, const ModelParams& params, Picture picture, double t) {
  (void)picture;
  (void)t;
  if (h.tags.size() != h.sum.size()) return partition_structured(h.sum, params, picture, t);
  bool odd_total = false;
  for (const auto& tag : h.tags) odd_total |= (tag.y_parity ^ (tag.atom == 'Y')) != 0;
  // With one mode the atomic label can be folded into the Y parity whenever both occur.
  const bool fold_atom = params.n_modes == 1 && odd_total;
  std::map<std::tuple<int, int, int>, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < h.tags.size(); ++i) {
    const auto& tag = h.tags[i];
    if (h.sum[i].string.is_identity()) continue;
    std::tuple<int, int, int> key;
    if (fold_atom) {
      key = {tag.hamming, tag.y_parity ^ (tag.atom == 'Y'), 0};
    } else {
      key = {tag.hamming, tag.y_parity, tag.atom == 'Y'};
    }
    buckets[key].push_back(i);
  }
  CommutingPartition out;
  out.method = PartitionMethod::structured;
  for (auto& [key, idx] : buckets)
    if (!idx.empty()) out.groups.push_back(std::move(idx));
  return out;
}

CommutingPartition partition_structured(const PauliSum& h, const ModelParams&, Picture, double) {
  auto out = partition_greedy(h, 0);
  out.fell_back = true;
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> frustration_graph(const PauliSum& sum) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < sum.size(); ++i)
    for (std::size_t j = i + 1; j < sum.size(); ++j)
      if (!commutes(sum[i].string, sum[j].string)) edges.emplace_back(i, j);
  return edges;
}

CommutingPartition partition_greedy(const PauliSum& sum, std::uint64_t seed) {
  std::vector<std::size_t> verts;
  for (std::size_t i = 0; i < sum.size(); ++i)
    if (!sum[i].string.is_identity()) verts.push_back(i);
  std::vector<std::vector<std::size_t>> adj(sum.size());
  for (auto [i, j] : frustration_graph(sum)) {
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  Rng rng(seed);
  shuffle(verts, rng);
  std::stable_sort(verts.begin(), verts.end(),
                   [&](std::size_t a, std::size_t b) { return adj[a].size() > adj[b].size(); });
  std::vector<int> color(sum.size(), -1);
  int n_colors = 0;
  for (auto v : verts) {
    std::vector<char> used(n_colors + 1, 0);
    for (auto u : adj[v])
      if (color[u] >= 0) used[color[u]] = 1;
    int c = 0;
    while (used[c]) ++c;
    color[v] = c;
    n_colors = std::max(n_colors, c + 1);
  }
  CommutingPartition out;
  out.method = PartitionMethod::greedy;
  out.seed = seed;
  out.groups.resize(n_colors);
  for (std::size_t i = 0; i < sum.size(); ++i)
    if (color[i] >= 0) out.groups[color[i]].push_back(i);
  return out;
}

bool verify_partition(const PauliSum& sum, const CommutingPartition& p) {
  std::vector<int> seen(sum.size(), 0);
  for (const auto& g : p.groups) {
    if (g.empty()) return false;
    for (auto i : g) {
      if (i >= sum.size() || seen[i]++) return false;
    }
    for (std::size_t a = 0; a < g.size(); ++a)
      for (std::size_t b = a + 1; b < g.size(); ++b)
        if (!commutes(sum[g[a]].string, sum[g[b]].string)) return false;
  }
  for (std::size_t i = 0; i < sum.size(); ++i)
    if (!seen[i] && !sum[i].string.is_identity()) return false;
  return true;
}

}  // namespace ejcm
