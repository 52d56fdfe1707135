#include "gsample/samplers.hpp"

#include <algorithm>

#include "gsample/error.hpp"

namespace gsample {

const std::vector<std::string>& method_names() {
  static const std::vector<std::string> names = {
      "ns",        "es",   "esi",      "ffs",      "stream-ns",
      "stream-es", "stream-bfs", "pies", "pies-min", "esi-2pass"};
  return names;
}

bool is_method(const std::string& name) {
  const auto& n = method_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

bool is_stream_method(const std::string& name) {
  return is_method(name) && (name.starts_with("stream-") ||
                             name.starts_with("pies") || name == "esi-2pass");
}

namespace {

[[noreturn]] void unknown(const std::string& method) {
  std::string list;
  for (const auto& m : method_names()) list += (list.empty() ? "" : ", ") + m;
  throw InvalidArgument("unknown method '" + method + "' (expected one of " +
                        list + ")");
}

}  // namespace

SampledSubgraph run_stream_method(EdgeStream& stream, std::size_t num_nodes,
                                  const std::string& method,
                                  const MethodParams& params) {
  const std::size_t n = target_node_count(params.spec, num_nodes);
  const std::uint64_t seed = params.spec.seed;
  SampledSubgraph s;
  if (method == "stream-ns") {
    s = stream_node_sample(stream, n, seed);
  } else if (method == "stream-es") {
    s = stream_edge_sample(stream, n, params.reservoir_edges ? params.reservoir_edges : n,
                           seed);
  } else if (method == "stream-bfs") {
    s = stream_bfs_sample(stream, n, params.window, seed);
  } else if (method == "pies") {
    s = pies(stream, n, seed);
  } else if (method == "pies-min") {
    s = pies_min(stream, n, seed);
  } else if (method == "esi-2pass") {
    s = induced_edge_sample_two_pass(stream, n, seed);
  } else {
    unknown(method);
  }
  s.meta.phi = params.spec.nodes ? 0.0 : params.spec.phi;
  return s;
}

SampledSubgraph run_method(const Graph& g, const std::string& method,
                           const MethodParams& params) {
  if (method == "ns") return node_sample(g, params.spec);
  if (method == "es") return edge_sample(g, params.spec);
  if (method == "esi") return induced_edge_sample(g, params.spec);
  if (method == "ffs") return forest_fire(g, params.spec);
  if (!is_stream_method(method)) unknown(method);
  auto stream = EdgeStream::permuted(g, params.stream_seed, params.order);
  return run_stream_method(stream, g.num_nodes(), method, params);
}

}  // namespace gsample
