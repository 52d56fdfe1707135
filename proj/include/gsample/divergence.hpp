#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "gsample/graph_stats.hpp"

namespace gsample {

inline constexpr double kDefaultAlpha = 0.99;

/// max_x |F1(x) - F2(x)| over the union of supports.
double ks_distance(const Distribution& d1, const Distribution& d2);

/// KL(a P1 + (1 - a) P2 || a P2 + (1 - a) P1), natural log, over the union of
/// supports. Cells whose smoothed numerator is 0 contribute 0.
double skew_divergence(const Distribution& p1, const Distribution& p2,
                       double alpha = kDefaultAlpha);

/// (1/m) sum |p_i - q_i| / p_i over the first m = min(|p|, |q|) entries.
/// Throws InvalidArgument if some p_i <= 0 in that range.
double normalized_l1(std::span<const double> p, std::span<const double> q);

/// ||p - q|| / ||p|| over the first min(|p|, |q|) entries.
double normalized_l2(std::span<const double> p, std::span<const double> q);

struct DistanceRow {
  std::string statistic;
  std::string measure;
  double value = 0.0;
  /// Support points (distributions) or compared length (vectors).
  std::size_t support = 0;
  std::string note;
};

struct DistanceReport {
  double alpha = kDefaultAlpha;
  std::vector<DistanceRow> rows;

  /// NaN when the pair is absent or undefined.
  double value(const std::string& statistic, const std::string& measure) const;
  /// Mean KS over degree, path length, clustering and k-core, skipping
  /// undefined entries.
  double mean_ks() const;
};

/// Distribution statistics in report order.
inline constexpr const char* kDistributionStats[] = {"degree", "path_length",
                                                    "clustering", "kcore"};

/// KS and SD for every distribution, L1 for eigenvalues (over the positive
/// prefix of the true values), L2 for network values.
DistanceReport compare_profiles(const StatisticProfile& truth,
                                const StatisticProfile& sample,
                                double alpha = kDefaultAlpha);

void write_report_header(std::ostream& out);
/// Rows as dataset,method,phi,trial,statistic,measure,value.
void write_report_rows(std::ostream& out, const std::string& dataset,
                       const std::string& method, double phi, std::size_t trial,
                       const DistanceReport& report);

/// Standalone report file: statistic,measure,value,support,note.
void write_report(std::ostream& out, const DistanceReport& report);

}  // namespace gsample
