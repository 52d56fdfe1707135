#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gsample/graph.hpp"

namespace gsample {

/// Provenance of one sample. Fields that do not apply to a method stay at
/// their defaults.
struct SampleMetadata {
  std::string method;
  /// Sampling fraction; 0 when the sampler was driven by a node count alone.
  double phi = 0.0;
  std::size_t target_nodes = 0;
  std::uint64_t seed = 0;
  /// Passes over the edge stream; empty for random-access samplers.
  std::optional<std::size_t> passes;
  /// Final |V_s| is target + 1 (last edge brought two new nodes).
  bool overshoot = false;

  double burn_probability = 0.0;      // ffs
  std::size_t window = 0;             // stream-bfs
  std::size_t fill_edges = 0;         // pies / pies-min: m
  std::size_t reservoir_edges = 0;    // stream-es: reservoir capacity used
  std::size_t reservoir_growths = 0;  // stream-es: replays caused by growth
  /// Largest number of retained nodes + edges (+ window edges) at any time.
  std::size_t peak_state = 0;
  std::vector<std::string> warnings;
};

struct SampledSubgraph {
  Graph graph;
  SampleMetadata meta;
};

std::string metadata_to_json(const SampledSubgraph& sample);

/// Sidecar path used next to a sample edge list: `<edges>.meta.json`.
std::filesystem::path metadata_path_for(const std::filesystem::path& edges);

/// Writes the edge list plus the JSON sidecar. Isolated sample nodes are
/// listed in the sidecar since an edge list cannot carry them.
void write_sample(const SampledSubgraph& sample,
                  const std::filesystem::path& edges_path);

/// Loads a graph from an edge list, restoring isolated nodes from an
/// adjacent sidecar when one exists. Throws like load_edge_list, except that
/// a file with no edges is accepted when the sidecar lists nodes.
Graph load_graph_with_sidecar(const std::filesystem::path& edges_path);

}  // namespace gsample
