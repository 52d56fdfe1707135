#include "gsample/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <string>

#include "gsample/error.hpp"

namespace gsample {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Walks the union of two supports in key order.
template <typename F>
void merge_supports(const Distribution& a, const Distribution& b, F&& f) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    double pa = 0.0, pb = 0.0;
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      pa = (ia++)->second;
    } else if (ia == a.end() || ib->first < ia->first) {
      pb = (ib++)->second;
    } else {
      pa = (ia++)->second;
      pb = (ib++)->second;
    }
    f(pa, pb);
  }
}

std::size_t union_size(const Distribution& a, const Distribution& b) {
  std::size_t n = 0;
  merge_supports(a, b, [&](double, double) { ++n; });
  return n;
}

}  // namespace

double ks_distance(const Distribution& d1, const Distribution& d2) {
  if (d1.empty() || d2.empty()) throw InvalidArgument("KS of an empty distribution");
  double f1 = 0.0, f2 = 0.0, best = 0.0;
  merge_supports(d1, d2, [&](double p1, double p2) {
    f1 += p1;
    f2 += p2;
    best = std::max(best, std::abs(f1 - f2));
  });
  return std::clamp(best, 0.0, 1.0);
}

double skew_divergence(const Distribution& p1, const Distribution& p2,
                       double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InvalidArgument("skew divergence alpha must lie in (0, 1)");
  }
  if (p1.empty() || p2.empty()) throw InvalidArgument("SD of an empty distribution");
  double sd = 0.0;
  merge_supports(p1, p2, [&](double a, double b) {
    const double num = alpha * a + (1.0 - alpha) * b;
    const double den = alpha * b + (1.0 - alpha) * a;
    if (num > 0.0 && den > 0.0) sd += num * std::log(num / den);
  });
  return std::max(sd, 0.0);
}

double normalized_l1(std::span<const double> p, std::span<const double> q) {
  const std::size_t m = std::min(p.size(), q.size());
  if (m == 0) throw InvalidArgument("L1 of empty vectors");
  double s = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (!(p[i] > 0.0)) {
      throw InvalidArgument("normalized L1 needs positive true values, got " +
                            std::to_string(p[i]) + " at " + std::to_string(i));
    }
    s += std::abs(p[i] - q[i]) / p[i];
  }
  return s / static_cast<double>(m);
}

double normalized_l2(std::span<const double> p, std::span<const double> q) {
  const std::size_t m = std::min(p.size(), q.size());
  if (m == 0) throw InvalidArgument("L2 of empty vectors");
  double diff = 0.0, norm = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    diff += (p[i] - q[i]) * (p[i] - q[i]);
    norm += p[i] * p[i];
  }
  if (norm == 0.0) throw InvalidArgument("normalized L2 of a zero-norm vector");
  return std::sqrt(diff) / std::sqrt(norm);
}

// ---------------------------------------------------------------------------

double DistanceReport::value(const std::string& statistic,
                             const std::string& measure) const {
  for (const auto& r : rows) {
    if (r.statistic == statistic && r.measure == measure) return r.value;
  }
  return kNaN;
}

double DistanceReport::mean_ks() const {
  double s = 0.0;
  int n = 0;
  for (const char* stat : kDistributionStats) {
    const double v = value(stat, "ks");
    if (std::isnan(v)) continue;
    s += v;
    ++n;
  }
  return n ? s / n : kNaN;
}

DistanceReport compare_profiles(const StatisticProfile& truth,
                                const StatisticProfile& sample, double alpha) {
  DistanceReport rep;
  rep.alpha = alpha;
  auto add_dist = [&](const char* name, const Distribution& a, const Distribution& b) {
    const std::size_t support = union_size(a, b);
    if (a.empty() || b.empty()) {
      rep.rows.push_back({name, "ks", kNaN, support, "empty distribution"});
      rep.rows.push_back({name, "sd", kNaN, support, "empty distribution"});
      return;
    }
    rep.rows.push_back({name, "ks", ks_distance(a, b), support, ""});
    rep.rows.push_back({name, "sd", skew_divergence(a, b, alpha), support, ""});
  };
  add_dist("degree", truth.degree, sample.degree);
  add_dist("path_length", truth.path_length.pmf, sample.path_length.pmf);
  add_dist("clustering", truth.clustering.pmf, sample.clustering.pmf);
  add_dist("kcore", truth.kcore.pmf, sample.kcore.pmf);

  std::size_t positive = 0;
  while (positive < truth.eigenvalues.size() && truth.eigenvalues[positive] > 0.0) {
    ++positive;
  }
  const std::size_t m1 = std::min(positive, sample.eigenvalues.size());
  std::string note;
  if (m1 < std::max(truth.eigenvalues.size(), sample.eigenvalues.size())) {
    note = "truncated to " + std::to_string(m1);
  }
  if (m1 == 0) {
    rep.rows.push_back({"eigenvalues", "l1", kNaN, 0, "no positive true eigenvalues"});
  } else {
    rep.rows.push_back({"eigenvalues", "l1",
                        normalized_l1(std::span(truth.eigenvalues).first(m1),
                                      std::span(sample.eigenvalues).first(m1)),
                        m1, note});
  }

  const std::size_t m2 = std::min(truth.network_values.size(),
                                  sample.network_values.size());
  note.clear();
  if (m2 < std::max(truth.network_values.size(), sample.network_values.size())) {
    note = "truncated to " + std::to_string(m2);
  }
  rep.rows.push_back({"network_values", "l2",
                      m2 ? normalized_l2(truth.network_values, sample.network_values)
                         : kNaN,
                      m2, note});
  return rep;
}

void write_report_header(std::ostream& out) {
  out << "dataset,method,phi,trial,statistic,measure,value\n";
}

void write_report_rows(std::ostream& out, const std::string& dataset,
                       const std::string& method, double phi, std::size_t trial,
                       const DistanceReport& report) {
  const auto prec = out.precision(10);
  for (const auto& r : report.rows) {
    out << dataset << ',' << method << ',' << phi << ',' << trial << ','
        << r.statistic << ',' << r.measure << ',' << r.value << '\n';
  }
  out.precision(prec);
}

void write_report(std::ostream& out, const DistanceReport& report) {
  const auto prec = out.precision(12);
  out << "statistic,measure,value,support,note\n";
  for (const auto& r : report.rows) {
    out << r.statistic << ',' << r.measure << ',' << r.value << ',' << r.support
        << ',' << r.note << '\n';
  }
  out.precision(prec);
}

}  // namespace gsample
