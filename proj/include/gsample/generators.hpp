#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gsample/graph.hpp"

namespace gsample {

/// G(n, p) over ids 0..n-1 (isolated nodes kept).
Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed);

/// Preferential attachment: each new node links to m distinct existing nodes
/// chosen proportionally to degree, starting from a clique on m + 1 nodes.
Graph barabasi_albert(std::size_t n, std::size_t m, std::uint64_t seed);

struct PlantedPartition {
  Graph graph;
  std::vector<std::uint32_t> block;  // per node id
};

/// Nodes split round-robin into `blocks` groups; p_in within, p_out across.
PlantedPartition planted_partition(std::size_t n, std::size_t blocks, double p_in,
                                   double p_out, std::uint64_t seed);

/// Edge (i, j) with probability min(1, w_i w_j / sum(w)).
Graph chung_lu(std::span<const double> weights, std::uint64_t seed);

/// Expected-degree sequence w_i proportional to (i + i0)^(-1/(exponent-1)),
/// scaled to the requested mean and capped at max_degree.
std::vector<double> power_law_weights(std::size_t n, double exponent,
                                      double mean_degree, double max_degree);

}  // namespace gsample
