#pragma once

#include <cstdint>
#include <optional>

#include "gsample/graph.hpp"
#include "gsample/sampled_subgraph.hpp"

namespace gsample {

struct SampleSpec {
  /// Fraction of nodes in (0, 1]. Ignored when `nodes` is set.
  double phi = 0.0;
  /// Explicit target node count; takes precedence over phi.
  std::optional<std::size_t> nodes;
  std::uint64_t seed = 0;
  /// Forest fire burn probability p_f in [0, 1).
  double burn_probability = 0.7;
};

/// n = round(phi * N), at least 1, or spec.nodes when set. Throws
/// InvalidArgument for phi outside (0, 1] or a target above N.
std::size_t target_node_count(const SampleSpec& spec, std::size_t num_nodes);

/// Uniform n-subset of V (partial Fisher-Yates), totally induced.
SampledSubgraph node_sample(const Graph& g, const SampleSpec& spec);

/// Uniform edge draws with replacement until |V_s| >= n. Keeps only the
/// drawn edges (partial induction); |V_s| may end at n + 1.
SampledSubgraph edge_sample(const Graph& g, const SampleSpec& spec);

/// Edge-draw node selection followed by total induction over V_s.
SampledSubgraph induced_edge_sample(const Graph& g, const SampleSpec& spec);

/// Forest fire: geometric burns (mean p_f / (1 - p_f)) to unvisited
/// neighbors, breadth-first, restarting at a uniform unvisited node when the
/// fire dies. Keeps burned edges only. Stops as soon as |V_s| = n.
SampledSubgraph forest_fire(const Graph& g, const SampleSpec& spec);

namespace detail {
/// Shared node-selection step of edge_sample / induced_edge_sample. Returns
/// sampled node indices in insertion order and the distinct drawn edges.
struct EdgeDrawResult {
  std::vector<NodeIndex> nodes;
  std::vector<Edge> edges;
};
EdgeDrawResult draw_edges_until(const Graph& g, std::size_t target,
                                std::uint64_t seed);
}  // namespace detail

}  // namespace gsample
