#include "gsample/edge_stream.hpp"

#include <algorithm>
#include <utility>

#include "gsample/error.hpp"
#include "gsample/hashing.hpp"

namespace gsample {

EdgeStream EdgeStream::permuted(const Graph& g, std::uint64_t seed,
                                StreamOrder order) {
  return permuted(std::vector<Edge>(g.edges().begin(), g.edges().end()), seed,
                  order);
}

EdgeStream EdgeStream::permuted(std::vector<Edge> edges, std::uint64_t seed,
                                StreamOrder order) {
  if (edges.empty()) throw EmptyGraphError("cannot stream an empty edge set");
  switch (order) {
    case StreamOrder::kShuffle: {
      Rng rng(seed);
      for (std::size_t i = edges.size() - 1; i > 0; --i) {
        const auto j = static_cast<std::size_t>(rng.below(i + 1));
        std::swap(edges[i], edges[j]);
      }
      break;
    }
    case StreamOrder::kKeyedHash: {
      std::vector<std::pair<std::uint64_t, Edge>> keyed;
      keyed.reserve(edges.size());
      for (const Edge& e : edges) keyed.emplace_back(hash_edge(seed, e), e);
      std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second.canonical() < b.second.canonical();
      });
      for (std::size_t i = 0; i < keyed.size(); ++i) edges[i] = keyed[i].second;
      break;
    }
  }
  return in_order(std::move(edges));
}

EdgeStream EdgeStream::in_order(std::vector<Edge> edges) {
  EdgeStream s;
  s.edges_ = std::make_shared<const std::vector<Edge>>(std::move(edges));
  return s;
}

EdgeStream EdgeStream::live(std::function<std::optional<Edge>()> source) {
  EdgeStream s;
  s.live_ = std::move(source);
  return s;
}

std::optional<Edge> EdgeStream::next() {
  if (edges_) {
    if (position_ >= edges_->size()) return std::nullopt;
    return (*edges_)[position_++];
  }
  auto e = live_ ? live_() : std::nullopt;
  if (e) ++position_;
  return e;
}

std::optional<std::size_t> EdgeStream::size() const {
  if (edges_) return edges_->size();
  return std::nullopt;
}

void EdgeStream::rewind() {
  if (!edges_) throw UnsupportedError("live edge stream cannot be replayed");
  position_ = 0;
  ++passes_;
}

std::span<const Edge> EdgeStream::order() const {
  if (!edges_) throw UnsupportedError("live edge stream has no stored order");
  return *edges_;
}

}  // namespace gsample
