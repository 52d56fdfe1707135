#include "gsample/stream_samplers.hpp"

#include <algorithm>
#include <string>

#include "gsample/error.hpp"

namespace gsample {
namespace {

/// Node set plus sampled edges with per-node incidence, for samplers that
/// evict nodes together with their edges.
class MutableSample {
 public:
  void add_node(NodeId id) { adj_.try_emplace(id); }
  bool has_node(NodeId id) const { return adj_.contains(id); }

  void remove_node(NodeId id) {
    const auto it = adj_.find(id);
    if (it == adj_.end()) return;
    for (NodeId w : it->second) {
      auto& back = adj_[w];
      back.erase(std::find(back.begin(), back.end(), id));
      edges_.erase(Edge{id, w}.canonical());
    }
    adj_.erase(it);
  }

  void add_edge(Edge e) {
    const Edge c = e.canonical();
    if (!edges_.insert(c).second) return;
    adj_[c.u].push_back(c.v);
    adj_[c.v].push_back(c.u);
  }

  std::size_t num_nodes() const { return adj_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  Graph graph() const {
    std::vector<Edge> edges(edges_.begin(), edges_.end());
    std::vector<NodeId> nodes;
    nodes.reserve(adj_.size());
    for (const auto& [id, nb] : adj_) nodes.push_back(id);
    return Graph::from_edges(edges, nodes);
  }

 private:
  std::unordered_map<NodeId, std::vector<NodeId>> adj_;
  std::unordered_set<Edge, EdgeHasher> edges_;
};

void require_target(std::size_t n) {
  if (n == 0) throw InvalidArgument("target node count must be >= 1");
}

SampleMetadata stream_meta(const char* method, std::size_t n,
                           std::uint64_t seed, const EdgeStream& stream) {
  SampleMetadata m;
  m.method = method;
  m.target_nodes = n;
  m.seed = seed;
  m.passes = stream.passes();
  return m;
}

/// Incident-node counts over a multiset of edges.
class Cover {
 public:
  void add(Edge e) {
    ++count_[e.u];
    ++count_[e.v];
  }
  void remove(Edge e) {
    drop(e.u);
    drop(e.v);
  }
  /// Nodes that would disappear if `e` were removed.
  std::size_t loss_if_removed(Edge e) const {
    return (count_.at(e.u) == 1) + (count_.at(e.v) == 1);
  }
  std::size_t size() const { return count_.size(); }
  bool contains(NodeId id) const { return count_.contains(id); }
  std::vector<NodeId> nodes() const {
    std::vector<NodeId> out;
    out.reserve(count_.size());
    for (const auto& [id, c] : count_) out.push_back(id);
    return out;
  }

 private:
  void drop(NodeId id) {
    auto it = count_.find(id);
    if (--it->second == 0) count_.erase(it);
  }
  std::unordered_map<NodeId, std::size_t> count_;
};

}  // namespace

// ---------------------------------------------------------------------------

NodeReservoir::Offer NodeReservoir::offer(NodeId id) {
  if (hash_of_.contains(id)) return {true, std::nullopt};
  if (capacity_ == 0) return {};
  const auto key = std::make_pair(hash_node(seed_, id), id);
  if (by_hash_.size() < capacity_) {
    by_hash_.insert(key);
    hash_of_.emplace(id, key.first);
    return {true, std::nullopt};
  }
  const auto last = std::prev(by_hash_.end());
  if (!(key < *last)) return {};
  const NodeId evicted = last->second;
  by_hash_.erase(last);
  hash_of_.erase(evicted);
  by_hash_.insert(key);
  hash_of_.emplace(id, key.first);
  return {true, evicted};
}

std::vector<NodeId> NodeReservoir::members() const {
  std::vector<NodeId> out;
  out.reserve(by_hash_.size());
  for (const auto& [h, id] : by_hash_) out.push_back(id);
  return out;
}

bool EdgeReservoir::offer(Edge e) {
  if (capacity_ == 0) return false;
  const Edge c = e.canonical();
  const auto key = std::make_pair(hash_edge(seed_, c), c);
  if (by_hash_.contains(key)) return true;
  if (by_hash_.size() < capacity_) {
    by_hash_.insert(key);
    return true;
  }
  const auto last = std::prev(by_hash_.end());
  if (!(key < *last)) return false;
  by_hash_.erase(last);
  by_hash_.insert(key);
  return true;
}

std::vector<std::pair<std::uint64_t, Edge>> EdgeReservoir::ascending() const {
  return {by_hash_.begin(), by_hash_.end()};
}

// ---------------------------------------------------------------------------

SampledSubgraph stream_node_sample(EdgeStream& stream, std::size_t n,
                                   std::uint64_t seed) {
  require_target(n);
  NodeReservoir reservoir(n, seed);
  MutableSample sample;
  std::size_t peak = 0;
  while (const auto e = stream.next()) {
    for (NodeId id : {e->u, e->v}) {
      if (sample.has_node(id)) continue;
      const auto r = reservoir.offer(id);
      if (!r.resident) continue;
      if (r.evicted) sample.remove_node(*r.evicted);
      sample.add_node(id);
    }
    if (!e->is_loop() && sample.has_node(e->u) && sample.has_node(e->v)) {
      sample.add_edge(*e);
    }
    peak = std::max(peak, sample.num_nodes() + sample.num_edges());
  }
  SampledSubgraph s{sample.graph(), stream_meta("stream-ns", n, seed, stream)};
  s.meta.peak_state = peak;
  return s;
}

EdgeReservoir stream_edge_reservoir(EdgeStream& stream, std::size_t m,
                                    std::uint64_t seed) {
  EdgeReservoir reservoir(m, seed);
  while (const auto e = stream.next()) {
    if (!e->is_loop()) reservoir.offer(*e);
  }
  return reservoir;
}

SampledSubgraph stream_edge_sample(EdgeStream& stream, std::size_t n,
                                   std::size_t m_hint, std::uint64_t seed) {
  require_target(n);
  std::size_t m = std::max<std::size_t>(m_hint, 1);
  std::size_t growths = 0;
  std::vector<std::string> warnings;
  std::vector<std::pair<std::uint64_t, Edge>> kept;
  Cover cover;
  while (true) {
    const EdgeReservoir reservoir = stream_edge_reservoir(stream, m, seed);
    kept = reservoir.ascending();
    cover = Cover{};
    for (const auto& [h, e] : kept) cover.add(e);
    if (cover.size() >= n) break;
    if (kept.size() < m) {
      warnings.push_back("stream holds fewer than " + std::to_string(n) +
                         " nodes; returning every edge");
      break;
    }
    if (!stream.replayable()) {
      warnings.push_back("reservoir of " + std::to_string(m) +
                         " edges covers fewer than " + std::to_string(n) +
                         " nodes and the stream cannot be replayed");
      break;
    }
    m *= 2;
    ++growths;
    stream.rewind();
  }
  const std::size_t peak = kept.size() + cover.size();

  // Drop the largest hashes first; never go below n nodes.
  while (!kept.empty() && cover.size() > n) {
    const Edge e = kept.back().second;
    if (cover.size() - cover.loss_if_removed(e) < n) break;
    cover.remove(e);
    kept.pop_back();
  }

  std::vector<Edge> edges;
  edges.reserve(kept.size());
  for (const auto& [h, e] : kept) edges.push_back(e);
  SampledSubgraph s{Graph::from_edges(edges),
                    stream_meta("stream-es", n, seed, stream)};
  s.meta.reservoir_edges = m;
  s.meta.reservoir_growths = growths;
  s.meta.overshoot = s.graph.num_nodes() > n;
  s.meta.peak_state = peak;
  s.meta.warnings = std::move(warnings);
  return s;
}

// ---------------------------------------------------------------------------

namespace {

/// The last `capacity` stream edges, minus those already burned, with an
/// incident-edge index and a uniformly samplable set of window nodes.
class SlidingWindow {
 public:
  explicit SlidingWindow(std::size_t capacity) : capacity_(capacity) {}

  void push(Edge e) {
    slots_.push_back({e, true});
    if (!e.is_loop()) {
      link(e.u, next_serial_);
      link(e.v, next_serial_);
      ++alive_;
    } else {
      slots_.back().alive = false;
    }
    ++next_serial_;
    while (slots_.size() > capacity_) {
      const std::uint64_t serial = next_serial_ - slots_.size();
      if (slots_.front().alive) kill(serial);
      slots_.pop_front();
    }
  }

  bool has_incident(NodeId id) const {
    const auto it = incident_.find(id);
    return it != incident_.end() && !it->second.empty();
  }

  /// Removes and returns a uniformly chosen window edge incident to `id`.
  Edge take_incident(NodeId id, Rng& rng) {
    const auto& list = incident_.at(id);
    const std::uint64_t serial = list[rng.below(list.size())];
    const Edge e = slot(serial).e;
    kill(serial);
    return e;
  }

  bool empty() const { return alive_ == 0; }
  std::size_t alive() const { return alive_; }

  std::optional<NodeId> uniform_node(Rng& rng) const {
    if (nodes_.empty()) return std::nullopt;
    return nodes_[rng.below(nodes_.size())];
  }

 private:
  struct Slot {
    Edge e;
    bool alive;
  };

  Slot& slot(std::uint64_t serial) {
    return slots_[serial - (next_serial_ - slots_.size())];
  }

  void link(NodeId id, std::uint64_t serial) {
    auto& list = incident_[id];
    if (list.empty()) {
      node_pos_[id] = nodes_.size();
      nodes_.push_back(id);
    }
    list.push_back(serial);
  }

  void unlink(NodeId id, std::uint64_t serial) {
    auto& list = incident_.at(id);
    list.erase(std::find(list.begin(), list.end(), serial));
    if (!list.empty()) return;
    incident_.erase(id);
    const std::size_t pos = node_pos_.at(id);
    node_pos_[nodes_.back()] = pos;
    nodes_[pos] = nodes_.back();
    nodes_.pop_back();
    node_pos_.erase(id);
  }

  void kill(std::uint64_t serial) {
    Slot& s = slot(serial);
    s.alive = false;
    unlink(s.e.u, serial);
    unlink(s.e.v, serial);
    --alive_;
  }

  std::size_t capacity_;
  std::deque<Slot> slots_;
  std::uint64_t next_serial_ = 0;
  std::size_t alive_ = 0;
  std::unordered_map<NodeId, std::vector<std::uint64_t>> incident_;
  std::vector<NodeId> nodes_;
  std::unordered_map<NodeId, std::size_t> node_pos_;
};

}  // namespace

SampledSubgraph stream_bfs_sample(EdgeStream& stream, std::size_t n,
                                  std::size_t window, std::uint64_t seed) {
  require_target(n);
  if (window == 0) throw InvalidArgument("window size must be >= 1");
  Rng rng(seed);
  SlidingWindow w(window);
  for (std::size_t i = 0; i < window; ++i) {
    const auto e = stream.next();
    if (!e) break;
    w.push(*e);
  }

  std::unordered_set<NodeId> sampled;
  std::vector<NodeId> sampled_order;
  std::vector<Edge> burned;
  std::unordered_set<Edge, EdgeHasher> burned_set;
  std::deque<NodeId> queue;
  std::size_t peak = 0;

  auto add_node = [&](NodeId id) {
    if (sampled.insert(id).second) sampled_order.push_back(id);
  };

  std::optional<NodeId> u = w.uniform_node(rng);
  bool stream_open = true;
  while (sampled.size() <= n) {
    std::optional<Edge> arriving;
    if (stream_open) {
      arriving = stream.next();
      stream_open = arriving.has_value();
    }
    // After the stream ends the window stops moving and is drained.
    if (!stream_open && w.empty()) break;

    if (u) {
      add_node(*u);
      if (w.has_incident(*u)) {
        const Edge e = w.take_incident(*u, rng);
        const NodeId v = e.u == *u ? e.v : e.u;
        if (burned_set.insert(e.canonical()).second) burned.push_back(e);
        add_node(v);
        queue.push_back(v);
      } else if (queue.empty()) {
        u = w.uniform_node(rng);
      } else {
        u = queue.front();
        queue.pop_front();
      }
    } else {
      u = w.uniform_node(rng);
    }
    if (arriving) w.push(*arriving);
    peak = std::max(peak, sampled.size() + burned.size() + w.alive());
  }

  // Keep burned edges in burn order until they cover n nodes.
  std::unordered_set<NodeId> covered;
  std::vector<Edge> kept;
  for (const Edge& e : burned) {
    if (covered.size() >= n) break;
    kept.push_back(e);
    covered.insert(e.u);
    covered.insert(e.v);
  }
  std::vector<NodeId> extra;
  for (NodeId id : sampled_order) {
    if (covered.size() + extra.size() >= n) break;
    if (!covered.contains(id)) extra.push_back(id);
  }

  SampledSubgraph s{Graph::from_edges(kept, extra),
                    stream_meta("stream-bfs", n, seed, stream)};
  s.meta.window = window;
  s.meta.overshoot = s.graph.num_nodes() > n;
  s.meta.peak_state = peak;
  return s;
}

// ---------------------------------------------------------------------------

std::optional<NodeId> select_min_degree_victim(
    std::span<const ResidentInfo> residents, std::span<const NodeId> exclude) {
  const ResidentInfo* best = nullptr;
  for (const ResidentInfo& r : residents) {
    if (std::find(exclude.begin(), exclude.end(), r.id) != exclude.end()) continue;
    if (!best || EvictionOrder{}(r, *best)) best = &r;
  }
  if (!best) return std::nullopt;
  return best->id;
}

PiesSampler::PiesSampler(std::size_t n, std::uint64_t seed,
                         PiesEviction eviction)
    : capacity_(n), eviction_(eviction), rng_(seed) {
  require_target(n);
}

void PiesSampler::touch_degree(NodeId id, std::size_t old_degree,
                               std::size_t new_degree) {
  if (eviction_ != PiesEviction::kMinDegree) return;
  const auto inserted = nodes_.at(id).inserted;
  by_degree_.erase({old_degree, inserted, id});
  by_degree_.insert({new_degree, inserted, id});
}

void PiesSampler::admit(NodeId id) {
  NodeState st;
  st.inserted = t_;
  st.slot = slots_.size();
  slots_.push_back(id);
  nodes_.emplace(id, st);
  if (eviction_ == PiesEviction::kMinDegree) by_degree_.insert({0, t_, id});
}

void PiesSampler::evict(NodeId id) {
  const auto it = adj_.find(id);
  if (it != adj_.end()) {
    for (NodeId w : it->second) {
      auto& back = adj_.at(w);
      back.erase(std::find(back.begin(), back.end(), id));
      auto& ws = nodes_.at(w);
      touch_degree(w, ws.degree, ws.degree - 1);
      --ws.degree;
      edges_.erase(Edge{id, w}.canonical());
    }
    adj_.erase(it);
  }
  const NodeState st = nodes_.at(id);
  if (eviction_ == PiesEviction::kMinDegree) {
    by_degree_.erase({st.degree, st.inserted, id});
  }
  const NodeId moved = slots_.back();
  slots_[st.slot] = moved;
  nodes_.at(moved).slot = st.slot;
  slots_.pop_back();
  nodes_.erase(id);
}

void PiesSampler::add_edge(Edge e) {
  const Edge c = e.canonical();
  if (!edges_.insert(c).second) return;
  adj_[c.u].push_back(c.v);
  adj_[c.v].push_back(c.u);
  for (NodeId id : {c.u, c.v}) {
    auto& st = nodes_.at(id);
    touch_degree(id, st.degree, st.degree + 1);
    ++st.degree;
  }
}

std::optional<NodeId> PiesSampler::pick_victim(std::span<const NodeId> exclude) {
  auto excluded = [&](NodeId id) {
    return std::find(exclude.begin(), exclude.end(), id) != exclude.end();
  };
  std::size_t present = 0;
  for (NodeId x : exclude) present += nodes_.contains(x);
  if (slots_.size() <= present) return std::nullopt;

  if (eviction_ == PiesEviction::kMinDegree) {
    for (const auto& [deg, ins, id] : by_degree_) {
      if (!excluded(id)) return id;
    }
    return std::nullopt;
  }
  while (true) {
    const NodeId id = slots_[rng_.below(slots_.size())];
    if (!excluded(id)) return id;
  }
}

void PiesSampler::offer(Edge e) {
  ++t_;
  const NodeId u = e.u;
  const NodeId v = e.v;
  if (e.is_loop()) return;

  if (!filled_) {
    if (!contains(u)) admit(u);
    if (!contains(v)) {
      if (nodes_.size() >= capacity_) {
        // One slot left but two new endpoints: make room without touching
        // either endpoint of this edge.
        const NodeId mine[] = {u, v};
        if (const auto victim = pick_victim(mine)) {
          evict(*victim);
          admit(v);
        }
      } else {
        admit(v);
      }
    }
    if (contains(u) && contains(v)) add_edge(e);
    fill_edges_ = edges_.size();
    filled_ = nodes_.size() >= capacity_;
  } else if (!(contains(u) && contains(v))) {
    const double p = static_cast<double>(fill_edges_) / static_cast<double>(t_);
    if (rng_.uniform01() <= p) {
      std::vector<NodeId> added;
      for (NodeId x : {u, v}) {
        if (contains(x)) continue;
        if (const auto victim = pick_victim(added)) evict(*victim);
        admit(x);
        added.push_back(x);
      }
    }
    if (contains(u) && contains(v)) add_edge(e);
  } else {
    add_edge(e);
  }
  peak_ = std::max(peak_, nodes_.size() + edges_.size());
}

std::vector<ResidentInfo> PiesSampler::residents() const {
  std::vector<ResidentInfo> out;
  out.reserve(nodes_.size());
  for (const auto& [id, st] : nodes_) out.push_back({id, st.degree, st.inserted});
  return out;
}

Graph PiesSampler::graph() const {
  std::vector<Edge> edges(edges_.begin(), edges_.end());
  return Graph::from_edges(edges, slots_);
}

namespace {

SampledSubgraph run_pies(EdgeStream& stream, std::size_t n, std::uint64_t seed,
                         PiesEviction eviction, const char* method) {
  PiesSampler sampler(n, seed, eviction);
  while (const auto e = stream.next()) sampler.offer(*e);
  SampledSubgraph s{sampler.graph(), stream_meta(method, n, seed, stream)};
  s.meta.fill_edges = sampler.fill_edges();
  s.meta.peak_state = sampler.peak_state();
  if (!sampler.filled()) {
    s.meta.warnings.push_back("stream ended during the fill phase");
  }
  return s;
}

}  // namespace

SampledSubgraph pies(EdgeStream& stream, std::size_t n, std::uint64_t seed) {
  return run_pies(stream, n, seed, PiesEviction::kUniform, "pies");
}

SampledSubgraph pies_min(EdgeStream& stream, std::size_t n, std::uint64_t seed) {
  return run_pies(stream, n, seed, PiesEviction::kMinDegree, "pies-min");
}

// ---------------------------------------------------------------------------

SampledSubgraph induced_edge_sample_two_pass(EdgeStream& stream, std::size_t n,
                                             std::uint64_t seed) {
  require_target(n);
  if (!stream.replayable()) {
    throw UnsupportedError(
        "two-pass induced edge sampling needs a replayable stream");
  }
  // Pass 1: the shortest prefix (by ascending hash) of seen edges that covers
  // n nodes. Edges above the prefix can never re-enter, since the prefix
  // boundary only moves down as more edges arrive.
  std::set<std::pair<std::uint64_t, Edge>> prefix;
  Cover cover;
  std::size_t peak = 0;
  while (const auto e = stream.next()) {
    if (e->is_loop()) continue;
    const Edge c = e->canonical();
    const auto key = std::make_pair(hash_edge(seed, c), c);
    if (cover.size() >= n && !(key < *prefix.rbegin())) continue;
    if (!prefix.insert(key).second) continue;
    cover.add(c);
    while (prefix.size() > 1) {
      const Edge last = prefix.rbegin()->second;
      if (cover.size() - cover.loss_if_removed(last) < n) break;
      cover.remove(last);
      prefix.erase(std::prev(prefix.end()));
    }
    peak = std::max(peak, prefix.size() + cover.size());
  }

  const auto selected = cover.nodes();
  const std::unordered_set<NodeId> member(selected.begin(), selected.end());

  // Pass 2: total induction.
  stream.rewind();
  std::vector<Edge> induced;
  std::unordered_set<Edge, EdgeHasher> seen;
  while (const auto e = stream.next()) {
    if (e->is_loop()) continue;
    if (member.contains(e->u) && member.contains(e->v) &&
        seen.insert(e->canonical()).second) {
      induced.push_back(*e);
    }
  }
  peak = std::max(peak, selected.size() + induced.size());

  SampledSubgraph s{Graph::from_edges(induced, selected),
                    stream_meta("esi-2pass", n, seed, stream)};
  s.meta.overshoot = s.graph.num_nodes() > n;
  s.meta.peak_state = peak;
  if (selected.size() < n) {
    s.meta.warnings.push_back("stream holds fewer than " + std::to_string(n) +
                              " nodes");
  }
  return s;
}

}  // namespace gsample
