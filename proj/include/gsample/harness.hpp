#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "gsample/divergence.hpp"
#include "gsample/graph_stats.hpp"
#include "gsample/samplers.hpp"

namespace gsample {

struct DatasetRef {
  std::string name;
  std::filesystem::path path;
  /// Preloaded graph; takes precedence over path.
  std::shared_ptr<const Graph> graph;
};

struct ExperimentConfig {
  std::vector<DatasetRef> datasets;
  std::vector<std::string> methods = {"ns", "es", "esi", "ffs"};
  std::vector<double> phis = {0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40};
  std::size_t trials = 10;
  std::uint64_t base_seed = 1;
  /// Permute the stream per trial; otherwise edges arrive in sorted order.
  bool permute = true;
  std::vector<std::string> statistics = {"degree",     "path_length",
                                         "clustering", "kcore",
                                         "eigenvalues", "network_values"};
  std::vector<std::string> measures = {"ks", "sd", "l1", "l2"};
  double burn_probability = 0.7;
  std::size_t window = 100;
  double alpha = kDefaultAlpha;
  double snapshot_phi = 0.2;
  unsigned jobs = 1;
  ProfileOptions profile;
};

/// key = value lines, '#' comments, comma-separated lists. Datasets are given
/// as `dataset.NAME = PATH` (or `dataset = PATH`, named by file stem).
ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base = {});
ExperimentConfig load_config(const std::filesystem::path& path);

struct ResultRow {
  std::string dataset;
  std::string method;
  double phi = 0.0;
  std::size_t trial = 0;
  std::string statistic;
  std::string measure;
  double value = 0.0;
};

/// Per-sample shape figures used by the isolated-node and max-core tables.
struct SampleRow {
  std::string dataset;
  std::string method;
  double phi = 0.0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  double isolated_fraction = 0.0;
  std::uint32_t max_core = 0;
  double mean_ks = 0.0;
  std::string error;  // empty on success
};

struct MeanRow {
  std::string dataset;  // empty in cross-dataset aggregates
  std::string method;
  double phi = 0.0;
  std::string statistic;
  std::string measure;
  double mean = 0.0;
  std::size_t count = 0;
};

/// Full-graph profiles computed once per dataset.
class ProfileCache {
 public:
  const StatisticProfile& get(const std::string& key, const Graph& g,
                              const ProfileOptions& opts);
  std::size_t computations() const;
  std::size_t hits() const;

 private:
  mutable std::mutex mu_;
  std::map<std::string, std::unique_ptr<StatisticProfile>> profiles_;
  std::size_t computations_ = 0;
  std::size_t hits_ = 0;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  std::vector<SampleRow> samples;
  std::vector<MeanRow> means;  // per (dataset, method, phi, statistic, measure)
  /// Truth and trial profiles at the snapshot fraction, keyed by dataset then
  /// method ("true" for the population).
  std::map<std::string, std::map<std::string, std::vector<StatisticProfile>>> snapshot;
  double snapshot_phi = 0.0;
  std::size_t profile_computations = 0;
  std::size_t profile_cache_hits = 0;
};

ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Mean over trials, skipping NaN values.
std::vector<MeanRow> mean_rows(std::span<const ResultRow> rows);
/// Unweighted average of per-dataset means for every (method, phi,
/// statistic, measure).
std::vector<MeanRow> aggregate_across_datasets(std::span<const MeanRow> means);

struct CurvePoint {
  std::int64_t x = 0;
  double cdf = 0.0;
  double ccdf = 0.0;
};
/// CDF and CCDF of the trial-averaged PMF.
std::vector<CurvePoint> averaged_curve(std::span<const StatisticProfile> profiles,
                                       const std::string& statistic);

/// raw.csv, samples.csv, means.csv, aggregate.csv and plot/<dataset>/*.csv.
void write_experiment(const ExperimentResult& result, const std::filesystem::path& dir);

}  // namespace gsample
