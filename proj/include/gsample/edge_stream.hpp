#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "gsample/graph.hpp"

namespace gsample {

enum class StreamOrder {
  /// Seeded Fisher-Yates shuffle held in memory.
  kShuffle,
  /// Ascending seeded hash of the canonical edge; needs no shuffle state and
  /// is reproducible from (seed, edge) alone.
  kKeyedHash,
};

/// Single-consumer sequential cursor over an adjacency stream.
///
/// Copies share the underlying edge order but keep independent cursors, so
/// several samplers can consume the same permutation. A live stream wraps
/// a pull callback and cannot be rewound.
class EdgeStream {
 public:
  static EdgeStream permuted(const Graph& g, std::uint64_t seed,
                             StreamOrder order = StreamOrder::kShuffle);
  static EdgeStream permuted(std::vector<Edge> edges, std::uint64_t seed,
                             StreamOrder order = StreamOrder::kShuffle);
  /// Replays `edges` exactly as given.
  static EdgeStream in_order(std::vector<Edge> edges);
  static EdgeStream live(std::function<std::optional<Edge>()> source);

  std::optional<Edge> next();

  /// Edges emitted so far in the current pass (t in the stream model).
  std::size_t position() const noexcept { return position_; }
  /// Number of passes started, counting the first.
  std::size_t passes() const noexcept { return passes_; }
  bool replayable() const noexcept { return edges_ != nullptr; }
  /// Total length when known up front.
  std::optional<std::size_t> size() const;

  /// Starts a new pass. Throws UnsupportedError for live streams.
  void rewind();

  /// Full order of a replayable stream without consuming it.
  std::span<const Edge> order() const;

 private:
  std::shared_ptr<const std::vector<Edge>> edges_;
  std::function<std::optional<Edge>()> live_;
  std::size_t position_ = 0;
  std::size_t passes_ = 1;
};

}  // namespace gsample
