#pragma once

#include <string>
#include <vector>

#include "gsample/edge_stream.hpp"
#include "gsample/static_samplers.hpp"
#include "gsample/stream_samplers.hpp"

namespace gsample {

/// Parameters shared by every sampling method, looked up by name.
struct MethodParams {
  SampleSpec spec;
  std::size_t window = 100;          // stream-bfs
  std::size_t reservoir_edges = 0;   // stream-es; 0 means n
  std::uint64_t stream_seed = 0;     // permutation of the simulated stream
  StreamOrder order = StreamOrder::kShuffle;
};

/// ns es esi ffs stream-ns stream-es stream-bfs pies pies-min esi-2pass
const std::vector<std::string>& method_names();
bool is_method(const std::string& name);
bool is_stream_method(const std::string& name);

/// Runs a method against an in-memory graph. Stream methods consume a
/// permutation of g's edges seeded by params.stream_seed.
SampledSubgraph run_method(const Graph& g, const std::string& method,
                           const MethodParams& params);

/// Runs a stream method over an existing stream; num_nodes is the
/// population size N used to turn phi into n.
SampledSubgraph run_stream_method(EdgeStream& stream, std::size_t num_nodes,
                                  const std::string& method,
                                  const MethodParams& params);

}  // namespace gsample
