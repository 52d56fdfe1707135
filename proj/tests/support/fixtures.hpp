#pragma once

#include <vector>

#include "gsample/generators.hpp"
#include "gsample/graph.hpp"

namespace fixture {

using gsample::Edge;
using gsample::Graph;

// 1-2, 2-3, 1-3 triangle with a pendant 3-4.
inline Graph kite() {
  const std::vector<Edge> e = {{1, 2}, {2, 3}, {1, 3}, {3, 4}};
  return Graph::from_edges(e);
}

inline Graph complete(int n) {
  std::vector<Edge> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.push_back({i, j});
  return Graph::from_edges(e);
}

inline Graph star(int leaves) {
  std::vector<Edge> e;
  for (int i = 1; i <= leaves; ++i) e.push_back({0, i});
  return Graph::from_edges(e);
}

inline Graph path(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return Graph::from_edges(e);
}

inline Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
  return gsample::erdos_renyi(n, p, seed);
}

}  // namespace fixture
