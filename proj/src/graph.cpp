#include "gsample/graph.hpp"

#include <algorithm>
#include <string>

#include "gsample/error.hpp"
#include "gsample/hashing.hpp"

namespace gsample {

std::size_t EdgeHasher::operator()(const Edge& e) const noexcept {
  const Edge c = e.canonical();
  return static_cast<std::size_t>(
      mix64(static_cast<std::uint64_t>(c.u) * 0x9E3779B97F4A7C15ULL ^
            static_cast<std::uint64_t>(c.v)));
}

Graph Graph::from_edges(std::span<const Edge> edges,
                        std::span<const NodeId> extra_nodes,
                        GraphBuildOptions options) {
  Graph g;
  std::vector<Edge> canon;
  canon.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.is_loop()) {
      if (!options.skip_self_loops) {
        throw InvalidArgument("self-loop on node " + std::to_string(e.u));
      }
      g.ids_.push_back(e.u);
      continue;
    }
    canon.push_back(e.canonical());
  }
  std::sort(canon.begin(), canon.end());
  const auto dup = std::adjacent_find(canon.begin(), canon.end());
  if (dup != canon.end()) {
    if (!options.dedupe) {
      throw InvalidArgument("duplicate edge " + std::to_string(dup->u) + " " +
                            std::to_string(dup->v));
    }
    canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
  }

  g.ids_.reserve(g.ids_.size() + 2 * canon.size() + extra_nodes.size());
  for (const Edge& e : canon) {
    g.ids_.push_back(e.u);
    g.ids_.push_back(e.v);
  }
  g.ids_.insert(g.ids_.end(), extra_nodes.begin(), extra_nodes.end());
  std::sort(g.ids_.begin(), g.ids_.end());
  g.ids_.erase(std::unique(g.ids_.begin(), g.ids_.end()), g.ids_.end());

  const std::size_t n = g.ids_.size();
  g.index_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    g.index_.emplace(g.ids_[i], static_cast<NodeIndex>(i));
  }

  std::vector<std::size_t> deg(n, 0);
  for (const Edge& e : canon) {
    ++deg[g.index_.at(e.u)];
    ++deg[g.index_.at(e.v)];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + deg[i];
  g.adj_.resize(g.offsets_[n]);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const Edge& e : canon) {
    const NodeIndex a = g.index_.at(e.u);
    const NodeIndex b = g.index_.at(e.v);
    g.adj_[cursor[a]++] = b;
    g.adj_[cursor[b]++] = a;
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i]),
              g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i + 1]));
  }
  g.edges_ = std::move(canon);
  return g;
}

std::optional<NodeIndex> Graph::find(NodeId id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

NodeIndex Graph::index_of(NodeId id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) {
    throw UnknownNodeError("unknown node id " + std::to_string(id));
  }
  return it->second;
}

bool Graph::has_edge(NodeIndex a, NodeIndex b) const {
  const auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

bool Graph::has_edge_ids(NodeId a, NodeId b) const {
  const auto ia = find(a);
  const auto ib = find(b);
  return ia && ib && has_edge(*ia, *ib);
}

double Graph::average_degree() const {
  if (ids_.empty()) return 0.0;
  return 2.0 * static_cast<double>(edges_.size()) /
         static_cast<double>(ids_.size());
}

Graph induced_subgraph(const Graph& g, std::span<const NodeId> nodes) {
  std::vector<NodeIndex> idx;
  idx.reserve(nodes.size());
  for (NodeId id : nodes) idx.push_back(g.index_of(id));
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());

  std::vector<char> member(g.num_nodes(), 0);
  for (NodeIndex i : idx) member[i] = 1;

  std::vector<Edge> edges;
  std::vector<NodeId> ids;
  ids.reserve(idx.size());
  for (NodeIndex i : idx) {
    ids.push_back(g.id(i));
    for (NodeIndex j : g.neighbors(i)) {
      if (j > i && member[j]) edges.push_back({g.id(i), g.id(j)});
    }
  }
  return Graph::from_edges(edges, ids);
}

}  // namespace gsample
