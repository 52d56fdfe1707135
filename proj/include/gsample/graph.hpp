#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace gsample {

/// Node identifiers are opaque integers carried verbatim from the input.
using NodeId = std::int64_t;
/// Dense position of a node inside one Graph instance.
using NodeIndex = std::uint32_t;

struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  /// Orientation-free form with u <= v.
  constexpr Edge canonical() const noexcept {
    return u <= v ? Edge{u, v} : Edge{v, u};
  }
  constexpr bool is_loop() const noexcept { return u == v; }

  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

struct EdgeHasher {
  std::size_t operator()(const Edge& e) const noexcept;
};

struct GraphBuildOptions {
  bool skip_self_loops = true;
  bool dedupe = true;
};

/// Immutable simple undirected graph.
///
/// Nodes are stored sorted by id and addressed by a dense NodeIndex; the
/// adjacency is CSR with each neighbor list sorted ascending. Because indices
/// follow id order, sorted-by-index and sorted-by-id coincide.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from an edge list plus optional extra (possibly isolated)
  /// nodes. Throws InvalidArgument on self-loops or duplicates when the
  /// corresponding option disables silent handling.
  static Graph from_edges(std::span<const Edge> edges,
                          std::span<const NodeId> extra_nodes = {},
                          GraphBuildOptions options = {});

  std::size_t num_nodes() const noexcept { return ids_.size(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return ids_.empty(); }

  std::span<const NodeId> node_ids() const noexcept { return ids_; }
  NodeId id(NodeIndex i) const { return ids_[i]; }
  std::optional<NodeIndex> find(NodeId id) const;
  /// Throws UnknownNodeError naming the id.
  NodeIndex index_of(NodeId id) const;
  bool contains(NodeId id) const { return index_.contains(id); }

  std::span<const NodeIndex> neighbors(NodeIndex i) const {
    return {adj_.data() + offsets_[i], adj_.data() + offsets_[i + 1]};
  }
  std::size_t degree(NodeIndex i) const {
    return offsets_[i + 1] - offsets_[i];
  }
  bool has_edge(NodeIndex a, NodeIndex b) const;
  bool has_edge_ids(NodeId a, NodeId b) const;

  /// Canonical (u < v) edges in ascending order.
  std::span<const Edge> edges() const noexcept { return edges_; }

  /// 2M / N, the mean degree.
  double average_degree() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.ids_ == b.ids_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<NodeId> ids_;
  std::unordered_map<NodeId, NodeIndex> index_;
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeIndex> adj_;
  std::vector<Edge> edges_;
};

/// Total induction: every edge of g with both endpoints in `nodes`.
/// Throws UnknownNodeError for ids absent from g.
Graph induced_subgraph(const Graph& g, std::span<const NodeId> nodes);

}  // namespace gsample
