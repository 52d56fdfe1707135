#include "gsample/sampled_subgraph.hpp"

#include <fstream>

#include <json.hpp>

#include "gsample/edge_io.hpp"
#include "gsample/error.hpp"

namespace gsample {

using nlohmann::json;

std::string metadata_to_json(const SampledSubgraph& sample) {
  const SampleMetadata& m = sample.meta;
  json j;
  j["method"] = m.method;
  j["phi"] = m.phi;
  j["target_nodes"] = m.target_nodes;
  j["seed"] = m.seed;
  j["num_nodes"] = sample.graph.num_nodes();
  j["num_edges"] = sample.graph.num_edges();
  j["passes"] = m.passes ? json(*m.passes) : json(nullptr);
  j["overshoot"] = m.overshoot;
  if (m.method == "ffs") j["burn_probability"] = m.burn_probability;
  if (m.window) j["window"] = m.window;
  if (m.fill_edges) j["fill_edges"] = m.fill_edges;
  if (m.reservoir_edges) {
    j["reservoir_edges"] = m.reservoir_edges;
    j["reservoir_growths"] = m.reservoir_growths;
  }
  if (m.peak_state) j["peak_state"] = m.peak_state;
  j["warnings"] = m.warnings;

  std::vector<NodeId> isolated;
  for (NodeIndex i = 0; i < sample.graph.num_nodes(); ++i) {
    if (sample.graph.degree(i) == 0) isolated.push_back(sample.graph.id(i));
  }
  j["isolated_nodes"] = isolated;
  return j.dump(2);
}

std::filesystem::path metadata_path_for(const std::filesystem::path& edges) {
  auto p = edges;
  p += ".meta.json";
  return p;
}

void write_sample(const SampledSubgraph& sample,
                  const std::filesystem::path& edges_path) {
  write_edge_list(edges_path, sample.graph.edges());
  const auto meta = metadata_path_for(edges_path);
  std::ofstream out(meta);
  if (!out) throw IoError("cannot write " + meta.string());
  out << metadata_to_json(sample) << '\n';
}

Graph load_graph_with_sidecar(const std::filesystem::path& edges_path) {
  std::ifstream in(edges_path);
  if (!in) throw IoError("cannot open edge list " + edges_path.string());
  const auto edges = parse_edge_list(in);

  std::vector<NodeId> extra;
  const auto meta = metadata_path_for(edges_path);
  if (std::filesystem::exists(meta)) {
    std::ifstream min(meta);
    try {
      const json j = json::parse(min);
      if (j.contains("isolated_nodes")) {
        extra = j["isolated_nodes"].get<std::vector<NodeId>>();
      }
    } catch (const json::exception& e) {
      throw ParseError("bad sample sidecar " + meta.string() + ": " + e.what(),
                       0);
    }
  }
  if (edges.empty() && extra.empty()) {
    throw EmptyGraphError("edge list " + edges_path.string() +
                          " contains no edges");
  }
  return Graph::from_edges(edges, extra);
}

}  // namespace gsample
