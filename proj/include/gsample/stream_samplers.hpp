#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "gsample/edge_stream.hpp"
#include "gsample/graph.hpp"
#include "gsample/hashing.hpp"
#include "gsample/sampled_subgraph.hpp"

namespace gsample {

// ---------------------------------------------------------------------------
// Reservoirs
// ---------------------------------------------------------------------------

/// Keeps the `capacity` nodes with the smallest seeded hash seen so far.
/// Ties on hash break by raw id.
class NodeReservoir {
 public:
  NodeReservoir(std::size_t capacity, std::uint64_t seed)
      : capacity_(capacity), seed_(seed) {}

  struct Offer {
    bool resident = false;
    std::optional<NodeId> evicted;
  };
  Offer offer(NodeId id);

  bool contains(NodeId id) const { return hash_of_.contains(id); }
  std::size_t size() const noexcept { return hash_of_.size(); }
  std::vector<NodeId> members() const;

 private:
  std::size_t capacity_;
  std::uint64_t seed_;
  std::set<std::pair<std::uint64_t, NodeId>> by_hash_;
  std::unordered_map<NodeId, std::uint64_t> hash_of_;
};

/// Keeps the `capacity` edges with the smallest seeded edge hash seen so far.
class EdgeReservoir {
 public:
  EdgeReservoir(std::size_t capacity, std::uint64_t seed)
      : capacity_(capacity), seed_(seed) {}

  /// Returns true when the edge is resident after the offer.
  bool offer(Edge e);
  std::size_t size() const noexcept { return by_hash_.size(); }
  /// Resident edges in ascending hash order.
  std::vector<std::pair<std::uint64_t, Edge>> ascending() const;

 private:
  std::size_t capacity_;
  std::uint64_t seed_;
  std::set<std::pair<std::uint64_t, Edge>> by_hash_;
};

// ---------------------------------------------------------------------------
// Stream samplers
// ---------------------------------------------------------------------------

/// Min-hash node reservoir of size n; a streamed edge joins E_s iff both
/// endpoints are resident, and evicted nodes take their sampled edges along.
/// Single pass.
SampledSubgraph stream_node_sample(EdgeStream& stream, std::size_t n,
                                   std::uint64_t seed);

/// The m smallest-hash edges of the stream (one pass). With fewer edges
/// than m in the whole stream, everything is retained.
EdgeReservoir stream_edge_reservoir(EdgeStream& stream, std::size_t m,
                                    std::uint64_t seed);

/// Min-hash edge reservoir of m_hint edges, then pruned in decreasing hash
/// order until the incident node count reaches n (ending in [n, n + 1]).
/// When the reservoir covers fewer than n nodes and the stream is
/// replayable, m doubles and the stream is replayed (each growth recorded).
SampledSubgraph stream_edge_sample(EdgeStream& stream, std::size_t n,
                                   std::size_t m_hint, std::uint64_t seed);

/// Breadth-first burning over a sliding window of the last `window` stream
/// edges, with uniform jumps to window nodes when the queue runs dry. The
/// output keeps burned edges in burn order until they cover n nodes.
SampledSubgraph stream_bfs_sample(EdgeStream& stream, std::size_t n,
                                  std::size_t window, std::uint64_t seed);

enum class PiesEviction { kUniform, kMinDegree };

/// Resident node as seen by the PIES(MIN) victim selection.
struct ResidentInfo {
  NodeId id = 0;
  std::size_t degree = 0;
  std::uint64_t inserted = 0;
};

/// Total order used by PIES(MIN): lowest sampled degree first, then the
/// longest-resident (earliest insertion), then smallest id.
struct EvictionOrder {
  bool operator()(const ResidentInfo& a, const ResidentInfo& b) const {
    if (a.degree != b.degree) return a.degree < b.degree;
    if (a.inserted != b.inserted) return a.inserted < b.inserted;
    return a.id < b.id;
  }
};

/// Reference selection over an explicit resident list; empty when every
/// resident is excluded.
std::optional<NodeId> select_min_degree_victim(
    std::span<const ResidentInfo> residents, std::span<const NodeId> exclude = {});

/// Incremental PIES state. Feed edges with offer(); the fill phase admits
/// every edge until n nodes are resident, after which non-resident endpoints
/// enter with probability m / t, each evicting one resident that was not
/// admitted by the same edge.
class PiesSampler {
 public:
  PiesSampler(std::size_t n, std::uint64_t seed,
              PiesEviction eviction = PiesEviction::kUniform);

  void offer(Edge e);

  bool filled() const noexcept { return filled_; }
  std::size_t fill_edges() const noexcept { return fill_edges_; }
  std::uint64_t time() const noexcept { return t_; }
  std::size_t num_nodes() const noexcept { return nodes_.size(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  std::size_t peak_state() const noexcept { return peak_; }
  bool contains(NodeId id) const { return nodes_.contains(id); }
  std::vector<ResidentInfo> residents() const;

  Graph graph() const;

 private:
  struct NodeState {
    std::uint64_t inserted = 0;
    std::size_t degree = 0;
    std::size_t slot = 0;
  };

  void admit(NodeId id);
  void evict(NodeId id);
  void add_edge(Edge e);
  std::optional<NodeId> pick_victim(std::span<const NodeId> exclude);
  void touch_degree(NodeId id, std::size_t old_degree, std::size_t new_degree);

  std::size_t capacity_;
  PiesEviction eviction_;
  Rng rng_;
  bool filled_ = false;
  std::size_t fill_edges_ = 0;
  std::uint64_t t_ = 0;
  std::size_t peak_ = 0;

  std::unordered_map<NodeId, NodeState> nodes_;
  std::vector<NodeId> slots_;
  std::unordered_map<NodeId, std::vector<NodeId>> adj_;
  std::unordered_set<Edge, EdgeHasher> edges_;
  std::set<std::tuple<std::size_t, std::uint64_t, NodeId>> by_degree_;
};

SampledSubgraph pies(EdgeStream& stream, std::size_t n, std::uint64_t seed);
SampledSubgraph pies_min(EdgeStream& stream, std::size_t n, std::uint64_t seed);

/// Two-pass induced edge sampling: pass one keeps the shortest ascending-hash
/// prefix of edges that covers at least n nodes (bounded state, no stream
/// buffering); pass two adds every edge with both endpoints selected.
/// Throws UnsupportedError on a live stream.
SampledSubgraph induced_edge_sample_two_pass(EdgeStream& stream, std::size_t n,
                                             std::uint64_t seed);

}  // namespace gsample
