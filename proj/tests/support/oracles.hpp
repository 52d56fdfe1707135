#pragma once

// Brute-force reference computations. They work from the raw edge list on
// dense matrices and share no code with the library's algorithms.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "gsample/graph.hpp"

namespace oracle {

using gsample::Edge;
using gsample::Graph;
using gsample::NodeId;

struct Dense {
  std::vector<NodeId> ids;
  std::vector<std::vector<char>> adj;
  std::size_t n() const { return ids.size(); }
  int deg(std::size_t i) const {
    int d = 0;
    for (char c : adj[i]) d += c;
    return d;
  }
};

inline Dense dense(const Graph& g) {
  Dense d;
  d.ids.assign(g.node_ids().begin(), g.node_ids().end());
  std::map<NodeId, std::size_t> pos;
  for (std::size_t i = 0; i < d.ids.size(); ++i) pos[d.ids[i]] = i;
  d.adj.assign(d.ids.size(), std::vector<char>(d.ids.size(), 0));
  for (const Edge& e : g.edges()) {
    d.adj[pos[e.u]][pos[e.v]] = 1;
    d.adj[pos[e.v]][pos[e.u]] = 1;
  }
  return d;
}

inline std::map<std::int64_t, double> degree_pmf(const Dense& d) {
  std::map<std::int64_t, double> p;
  for (std::size_t i = 0; i < d.n(); ++i) p[d.deg(i)] += 1.0;
  for (auto& [k, v] : p) v /= static_cast<double>(d.n());
  return p;
}

/// All-pairs hop counts over reachable ordered pairs.
inline std::map<std::int64_t, double> path_pmf(const Dense& d) {
  const std::size_t n = d.n();
  const int inf = std::numeric_limits<int>::max() / 4;
  std::vector<std::vector<int>> dist(n, std::vector<int>(n, inf));
  for (std::size_t i = 0; i < n; ++i) {
    dist[i][i] = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (d.adj[i][j]) dist[i][j] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        dist[i][j] = std::min(dist[i][j], dist[i][k] + dist[k][j]);
  std::map<std::int64_t, double> p;
  double total = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && dist[i][j] < inf) {
        p[dist[i][j]] += 1.0;
        total += 1.0;
      }
  for (auto& [k, v] : p) v /= total;
  return p;
}

/// Histogram over 100 right-closed bins, by integer comparison against the
/// bin edges.
inline std::map<std::int64_t, double> clustering_pmf(const Dense& d) {
  std::map<std::int64_t, double> p;
  double eligible = 0;
  for (std::size_t v = 0; v < d.n(); ++v) {
    const long long k = d.deg(v);
    if (k < 2) continue;
    long long links = 0;
    for (std::size_t a = 0; a < d.n(); ++a)
      for (std::size_t b = a + 1; b < d.n(); ++b)
        if (d.adj[v][a] && d.adj[v][b] && d.adj[a][b]) ++links;
    // cc = 2 links / (k (k - 1)); find the smallest b with cc <= (b + 1)/100.
    std::int64_t bin = 0;
    while (200 * links > (bin + 1) * k * (k - 1)) ++bin;
    p[bin] += 1.0;
    eligible += 1.0;
  }
  for (auto& [k, v] : p) v /= eligible;
  return p;
}

/// Core number via repeated pruning for every k.
inline std::vector<int> core_numbers(const Dense& d) {
  const std::size_t n = d.n();
  std::vector<int> core(n, 0);
  for (int k = 1;; ++k) {
    std::vector<char> alive(n, 1);
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t v = 0; v < n; ++v) {
        if (!alive[v]) continue;
        int deg = 0;
        for (std::size_t w = 0; w < n; ++w) deg += alive[w] && d.adj[v][w];
        if (deg < k) {
          alive[v] = 0;
          changed = true;
        }
      }
    }
    bool any = false;
    for (std::size_t v = 0; v < n; ++v)
      if (alive[v]) {
        core[v] = k;
        any = true;
      }
    if (!any) break;
  }
  return core;
}

/// Every eigenvalue of a symmetric matrix by cyclic Jacobi rotations,
/// descending.
inline std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a,
                                              std::vector<double>* principal = nullptr) {
  const std::size_t n = a.size();
  std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-22) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<std::pair<double, std::size_t>> ev;
  for (std::size_t i = 0; i < n; ++i) ev.emplace_back(a[i][i], i);
  std::sort(ev.begin(), ev.end(), [](auto x, auto y) { return x.first > y.first; });
  if (principal && n) {
    principal->resize(n);
    for (std::size_t k = 0; k < n; ++k) (*principal)[k] = v[k][ev[0].second];
  }
  std::vector<double> out;
  for (const auto& [val, i] : ev) out.push_back(val);
  return out;
}

inline std::vector<std::vector<double>> adjacency(const Dense& d) {
  std::vector<std::vector<double>> a(d.n(), std::vector<double>(d.n(), 0.0));
  for (std::size_t i = 0; i < d.n(); ++i)
    for (std::size_t j = 0; j < d.n(); ++j) a[i][j] = d.adj[i][j];
  return a;
}

/// Total induction check of `sample` against `population` by pair scan.
inline bool totally_induced(const Graph& population, const Graph& sample) {
  const auto ids = sample.node_ids();
  std::set<std::pair<NodeId, NodeId>> pop;
  for (const Edge& e : population.edges()) pop.insert({e.u, e.v});
  std::set<std::pair<NodeId, NodeId>> got;
  for (const Edge& e : sample.edges()) got.insert({e.u, e.v});
  for (std::size_t a = 0; a < ids.size(); ++a) {
    for (std::size_t b = a + 1; b < ids.size(); ++b) {
      const std::pair<NodeId, NodeId> key{std::min(ids[a], ids[b]), std::max(ids[a], ids[b])};
      if (pop.contains(key) != got.contains(key)) return false;
    }
  }
  for (const auto& e : got)
    if (!pop.contains(e)) return false;
  return true;
}

/// Maximum CDF gap by summing each distribution up to every point.
inline double ks(const std::map<std::int64_t, double>& a,
                 const std::map<std::int64_t, double>& b) {
  std::set<std::int64_t> pts;
  for (const auto& [k, v] : a) pts.insert(k);
  for (const auto& [k, v] : b) pts.insert(k);
  double best = 0.0;
  for (auto x : pts) {
    double fa = 0, fb = 0;
    for (const auto& [k, v] : a) if (k <= x) fa += v;
    for (const auto& [k, v] : b) if (k <= x) fb += v;
    best = std::max(best, std::abs(fa - fb));
  }
  return best;
}

}  // namespace oracle
