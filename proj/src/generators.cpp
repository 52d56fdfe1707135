#include "gsample/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "gsample/error.hpp"
#include "gsample/hashing.hpp"

namespace gsample {

namespace {

std::vector<NodeId> all_ids(std::size_t n) {
  std::vector<NodeId> ids(n);
  std::iota(ids.begin(), ids.end(), NodeId{0});
  return ids;
}

/// Geometric skip length for a Bernoulli(p) scan.
std::size_t skip(Rng& rng, double p) {
  if (p >= 1.0) return 0;
  const double r = 1.0 - rng.uniform01();
  return static_cast<std::size_t>(std::floor(std::log(r) / std::log1p(-p)));
}

}  // namespace

Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("edge probability must lie in [0, 1]");
  Rng rng(seed);
  std::vector<Edge> edges;
  if (p > 0.0) {
    // Batagelj-Brandes skipping over the lower triangle.
    std::int64_t v = 1, w = -1;
    const auto nn = static_cast<std::int64_t>(n);
    while (v < nn) {
      w += 1 + static_cast<std::int64_t>(skip(rng, p));
      while (w >= v && v < nn) {
        w -= v;
        ++v;
      }
      if (v < nn) edges.push_back({w, v});
    }
  }
  const auto ids = all_ids(n);
  return Graph::from_edges(edges, ids);
}

Graph barabasi_albert(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (m == 0 || n <= m) throw InvalidArgument("preferential attachment needs n > m >= 1");
  Rng rng(seed);
  std::vector<Edge> edges;
  std::vector<NodeId> ends;  // each node repeated once per incident edge
  for (std::size_t i = 0; i <= m; ++i) {
    for (std::size_t j = i + 1; j <= m; ++j) {
      edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j)});
      ends.push_back(static_cast<NodeId>(i));
      ends.push_back(static_cast<NodeId>(j));
    }
  }
  std::vector<NodeId> picked;
  for (std::size_t v = m + 1; v < n; ++v) {
    picked.clear();
    while (picked.size() < m) {
      const NodeId t = ends[rng.below(ends.size())];
      if (std::find(picked.begin(), picked.end(), t) == picked.end()) picked.push_back(t);
    }
    for (NodeId t : picked) {
      edges.push_back({t, static_cast<NodeId>(v)});
      ends.push_back(t);
      ends.push_back(static_cast<NodeId>(v));
    }
  }
  return Graph::from_edges(edges, all_ids(n));
}

PlantedPartition planted_partition(std::size_t n, std::size_t blocks, double p_in,
                                   double p_out, std::uint64_t seed) {
  if (blocks == 0) throw InvalidArgument("block count must be >= 1");
  Rng rng(seed);
  PlantedPartition out;
  out.block.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.block[i] = static_cast<std::uint32_t>(i % blocks);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double p = out.block[i] == out.block[j] ? p_in : p_out;
      if (rng.uniform01() < p) {
        edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j)});
      }
    }
  }
  out.graph = Graph::from_edges(edges, all_ids(n));
  return out;
}

Graph chung_lu(std::span<const double> weights, std::uint64_t seed) {
  const std::size_t n = weights.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return weights[a] > weights[b]; });
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0)) throw InvalidArgument("weights must have a positive sum");
  Rng rng(seed);
  std::vector<Edge> edges;
  // Miller-Hagberg: weights sorted descending, so p only decreases along v.
  for (std::size_t a = 0; a + 1 < n; ++a) {
    const double wu = weights[order[a]];
    std::size_t b = a + 1;
    double p = std::min(1.0, wu * weights[order[b]] / total);
    while (b < n && p > 0.0) {
      if (p < 1.0) b += skip(rng, p);
      if (b >= n) break;
      const double q = std::min(1.0, wu * weights[order[b]] / total);
      if (rng.uniform01() < q / p) {
        edges.push_back({static_cast<NodeId>(order[a]), static_cast<NodeId>(order[b])});
      }
      p = q;
      ++b;
    }
  }
  return Graph::from_edges(edges, all_ids(n));
}

std::vector<double> power_law_weights(std::size_t n, double exponent,
                                      double mean_degree, double max_degree) {
  if (!(exponent > 2.0)) throw InvalidArgument("power-law exponent must exceed 2");
  std::vector<double> w(n);
  const double gamma = 1.0 / (exponent - 1.0);
  for (std::size_t i = 0; i < n; ++i) w[i] = std::pow(static_cast<double>(i + 1), -gamma);
  // Rescale, then cap; a few fixed-point rounds keep the mean on target.
  for (int round = 0; round < 20; ++round) {
    const double mean = std::accumulate(w.begin(), w.end(), 0.0) / static_cast<double>(n);
    const double scale = mean_degree / mean;
    for (auto& x : w) x = std::min(max_degree, x * scale);
  }
  return w;
}

}  // namespace gsample
