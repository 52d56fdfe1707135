#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <vector>

#include "gsample/graph.hpp"

namespace gsample {

/// Probability mass over an ordered integer support (degree, hops, core
/// number, clustering bin).
using Distribution = std::map<std::int64_t, double>;

inline constexpr int kClusteringBins = 100;

/// Cumulative form, evaluated at each support point.
std::vector<std::pair<std::int64_t, double>> cdf(const Distribution& d);
/// 1 - CDF at each support point.
std::vector<std::pair<std::int64_t, double>> ccdf(const Distribution& d);

Distribution degree_distribution(const Graph& g);

struct PathLengthOptions {
  /// Exact all-sources BFS up to this many nodes.
  std::size_t exact_limit = 50'000;
  /// Source count for larger graphs.
  std::size_t sources = 1'000;
  std::uint64_t seed = 0x5eed;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct PathLengthDistribution {
  Distribution pmf;  // hops h >= 1 over reachable ordered pairs
  bool exact = true;
  std::size_t sources = 0;
  std::uint64_t reachable_pairs = 0;
};

PathLengthDistribution path_length_distribution(const Graph& g,
                                                const PathLengthOptions& opts = {});

struct ClusteringDistribution {
  /// Bin b covers (b/100, (b+1)/100], bin 0 also holds cc = 0.
  Distribution pmf;
  double mean = 0.0;
  std::size_t eligible = 0;
  bool empty() const noexcept { return eligible == 0; }
};

/// Local clustering coefficient of one node; nodes of degree <= 1 give 0.
double local_clustering(const Graph& g, NodeIndex v);
/// Bin for cc = 2 t / (d (d - 1)), computed exactly in integers.
int clustering_bin(std::uint64_t triangles, std::uint64_t degree);
ClusteringDistribution clustering_distribution(const Graph& g);

/// Core number per node index, by minimum-degree peeling.
std::vector<std::uint32_t> core_numbers(const Graph& g);

struct KCoreDistribution {
  Distribution pmf;  // fraction of nodes with each core number
  std::uint32_t max_core = 0;
};

KCoreDistribution kcore_distribution(const Graph& g);

struct EigenOptions {
  std::size_t k = 25;
  double tol = 1e-6;
  std::size_t max_iter = 10'000;
  /// Components up to this size use a dense solver.
  std::size_t dense_limit = 400;
};

struct EigenResult {
  std::vector<double> values;  // descending
  /// Unit-norm eigenvector of values[0] over node indices.
  std::vector<double> principal;
  double principal_residual = 0.0;
  bool converged = true;
};

/// Top-k adjacency eigenvalues and the principal eigenvector. Never throws
/// on non-convergence; `converged` flags partial results.
EigenResult adjacency_eigen(const Graph& g, const EigenOptions& opts = {});

/// Throws ConvergenceError on non-convergence.
std::vector<double> top_eigenvalues(const Graph& g, std::size_t k = 25,
                                    double tol = 1e-6);
std::vector<double> network_values(const Graph& g, std::size_t k = 100);
/// Sorted descending magnitudes of a vector, first k kept.
std::vector<double> magnitudes_descending(std::span<const double> x,
                                          std::size_t k);

/// Mean population degree over the sampled ids.
double estimate_average_degree(const Graph& g, std::span<const NodeId> sampled);

struct ProfileOptions {
  PathLengthOptions path;
  EigenOptions eigen;
  std::size_t network_values = 100;
};

struct StatisticProfile {
  std::size_t num_nodes = 0;
  std::size_t num_edges = 0;
  Distribution degree;
  PathLengthDistribution path_length;
  ClusteringDistribution clustering;
  KCoreDistribution kcore;
  std::vector<double> eigenvalues;
  std::vector<double> network_values;
  bool eigen_converged = true;
};

StatisticProfile compute_profile(const Graph& g, const ProfileOptions& opts = {});

/// Writes one CSV per statistic plus manifest.json into `dir`.
void write_profile(const StatisticProfile& p, const std::filesystem::path& dir);
StatisticProfile read_profile(const std::filesystem::path& dir);

}  // namespace gsample
