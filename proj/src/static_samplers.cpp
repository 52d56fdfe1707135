#include "gsample/static_samplers.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>
#include <unordered_set>

#include "gsample/error.hpp"
#include "gsample/hashing.hpp"

namespace gsample {

std::size_t target_node_count(const SampleSpec& spec, std::size_t num_nodes) {
  if (num_nodes == 0) throw EmptyGraphError("cannot sample an empty graph");
  if (spec.nodes) {
    if (*spec.nodes == 0) throw InvalidArgument("target node count must be >= 1");
    if (*spec.nodes > num_nodes) {
      throw InvalidArgument("target node count " + std::to_string(*spec.nodes) +
                            " exceeds graph size " + std::to_string(num_nodes));
    }
    return *spec.nodes;
  }
  if (!(spec.phi > 0.0 && spec.phi <= 1.0)) {
    throw InvalidArgument("phi must lie in (0, 1], got " +
                          std::to_string(spec.phi));
  }
  const auto n = static_cast<std::size_t>(
      std::llround(spec.phi * static_cast<double>(num_nodes)));
  return std::clamp<std::size_t>(n, 1, num_nodes);
}

namespace {

SampleMetadata base_meta(const char* method, const SampleSpec& spec,
                         std::size_t target) {
  SampleMetadata m;
  m.method = method;
  m.phi = spec.nodes ? 0.0 : spec.phi;
  m.target_nodes = target;
  m.seed = spec.seed;
  return m;
}

std::vector<NodeId> ids_of(const Graph& g, std::span<const NodeIndex> idx) {
  std::vector<NodeId> ids;
  ids.reserve(idx.size());
  for (NodeIndex i : idx) ids.push_back(g.id(i));
  return ids;
}

}  // namespace

namespace detail {

EdgeDrawResult draw_edges_until(const Graph& g, std::size_t target,
                                std::uint64_t seed) {
  std::size_t reachable = 0;
  for (NodeIndex i = 0; i < g.num_nodes(); ++i) reachable += g.degree(i) > 0;
  if (target > reachable) {
    throw InvalidArgument("edge-based selection cannot reach " +
                          std::to_string(target) + " nodes: only " +
                          std::to_string(reachable) + " are non-isolated");
  }
  const auto edges = g.edges();
  Rng rng(seed);
  EdgeDrawResult out;
  std::vector<char> in_sample(g.num_nodes(), 0);
  std::unordered_set<std::size_t> drawn;
  while (out.nodes.size() < target) {
    const auto r = static_cast<std::size_t>(rng.below(edges.size()));
    const Edge& e = edges[r];
    for (NodeId id : {e.u, e.v}) {
      const NodeIndex i = g.index_of(id);
      if (!in_sample[i]) {
        in_sample[i] = 1;
        out.nodes.push_back(i);
      }
    }
    if (drawn.insert(r).second) out.edges.push_back(e);
  }
  return out;
}

}  // namespace detail

SampledSubgraph node_sample(const Graph& g, const SampleSpec& spec) {
  const std::size_t n = target_node_count(spec, g.num_nodes());
  std::vector<NodeIndex> pool(g.num_nodes());
  for (NodeIndex i = 0; i < pool.size(); ++i) pool[i] = i;
  Rng rng(spec.seed);
  for (std::size_t i = 0; i < n; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  const auto chosen = std::span<const NodeIndex>(pool).first(n);
  SampledSubgraph s{induced_subgraph(g, ids_of(g, chosen)),
                    base_meta("ns", spec, n)};
  return s;
}

SampledSubgraph edge_sample(const Graph& g, const SampleSpec& spec) {
  const std::size_t n = target_node_count(spec, g.num_nodes());
  auto drawn = detail::draw_edges_until(g, n, spec.seed);
  SampledSubgraph s{Graph::from_edges(drawn.edges), base_meta("es", spec, n)};
  s.meta.overshoot = s.graph.num_nodes() > n;
  return s;
}

SampledSubgraph induced_edge_sample(const Graph& g, const SampleSpec& spec) {
  const std::size_t n = target_node_count(spec, g.num_nodes());
  auto drawn = detail::draw_edges_until(g, n, spec.seed);
  SampledSubgraph s{induced_subgraph(g, ids_of(g, drawn.nodes)),
                    base_meta("esi", spec, n)};
  s.meta.overshoot = s.graph.num_nodes() > n;
  return s;
}

SampledSubgraph forest_fire(const Graph& g, const SampleSpec& spec) {
  const std::size_t n = target_node_count(spec, g.num_nodes());
  const double pf = spec.burn_probability;
  if (!(pf >= 0.0 && pf < 1.0)) {
    throw InvalidArgument("burn probability must lie in [0, 1), got " +
                          std::to_string(pf));
  }
  Rng rng(spec.seed);
  std::vector<char> visited(g.num_nodes(), 0);
  std::vector<NodeIndex> restart_pool(g.num_nodes());
  for (NodeIndex i = 0; i < restart_pool.size(); ++i) restart_pool[i] = i;

  std::vector<NodeId> nodes;
  std::vector<Edge> burned;
  std::deque<NodeIndex> frontier;
  std::vector<NodeIndex> candidates;

  auto visit = [&](NodeIndex i) {
    visited[i] = 1;
    nodes.push_back(g.id(i));
    frontier.push_back(i);
  };

  while (nodes.size() < n) {
    if (frontier.empty()) {
      // Uniform over the remaining pool; visited entries are discarded lazily.
      while (true) {
        const auto j = static_cast<std::size_t>(rng.below(restart_pool.size()));
        const NodeIndex cand = restart_pool[j];
        restart_pool[j] = restart_pool.back();
        restart_pool.pop_back();
        if (!visited[cand]) {
          visit(cand);
          break;
        }
      }
      continue;
    }
    const NodeIndex u = frontier.front();
    frontier.pop_front();
    candidates.clear();
    for (NodeIndex w : g.neighbors(u)) {
      if (!visited[w]) candidates.push_back(w);
    }
    const auto burn = std::min<std::size_t>(rng.geometric_failures(pf),
                                            candidates.size());
    for (std::size_t k = 0; k < burn && nodes.size() < n; ++k) {
      const auto j = k + static_cast<std::size_t>(rng.below(candidates.size() - k));
      std::swap(candidates[k], candidates[j]);
      const NodeIndex w = candidates[k];
      burned.push_back({g.id(u), g.id(w)});
      visit(w);
    }
  }

  SampledSubgraph s{Graph::from_edges(burned, nodes), base_meta("ffs", spec, n)};
  s.meta.burn_probability = pf;
  return s;
}

}  // namespace gsample
