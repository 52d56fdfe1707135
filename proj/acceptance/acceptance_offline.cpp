// Offline acceptance suite: each criterion prints one PASS/FAIL line.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "gsample/divergence.hpp"
#include "gsample/edge_stream.hpp"
#include "gsample/error.hpp"
#include "gsample/generators.hpp"
#include "gsample/graph_stats.hpp"
#include "gsample/harness.hpp"
#include "gsample/hashing.hpp"
#include "gsample/relational.hpp"
#include "gsample/samplers.hpp"
#include "gsample/static_samplers.hpp"
#include "gsample/stream_samplers.hpp"
#include "oracles.hpp"

using namespace gsample;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

int deviations = 0;

/// A documented deviation prints its real outcome but does not fail the run.
template <typename F>
void criterion(int id, const char* name, F&& body, bool documented_deviation = false) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const char* tag = o.pass ? "PASS" : documented_deviation ? "FAIL (documented deviation)" : "FAIL";
  std::printf("%s  %2d  %-28s %s  (%.1fs)\n", tag, id, name, o.detail.c_str(), secs);
  std::fflush(stdout);
  if (!o.pass) (documented_deviation ? deviations : failures) += 1;
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt2(const char* f, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

bool same_pmf(const Distribution& a, const std::map<std::int64_t, double>& b) {
  if (a.size() != b.size()) return false;
  for (const auto& [k, v] : b) {
    const auto it = a.find(k);
    if (it == a.end() || std::abs(it->second - v) > 1e-12) return false;
  }
  return true;
}

// 1 ------------------------------------------------------------------------

Outcome reservoir_uniformity() {
  const Graph g = barabasi_albert(1000, 3, 101);
  const std::size_t n = 100, trials = 10000;
  std::vector<double> hits(g.num_nodes(), 0.0);
  for (std::size_t seed = 0; seed < trials; ++seed) {
    auto stream = EdgeStream::permuted(g, seed);
    const auto s = stream_node_sample(stream, n, derive_seed(seed, 1));
    if (s.graph.num_nodes() != n) return {false, "sample size differs from n"};
    for (NodeId id : s.graph.node_ids()) hits[g.index_of(id)] += 1.0;
  }
  // Fixed-size samples: counts have covariance T p (1 - p) N / (N - 1) (I - J / N),
  // so the scaled Pearson statistic is chi-square with N - 1 degrees of freedom.
  const double N = static_cast<double>(g.num_nodes());
  const double p = static_cast<double>(n) / N;
  const double T = static_cast<double>(trials);
  const double scale = T * p * (1 - p) * N / (N - 1);
  double x2 = 0;
  double lo = 1, hi = 0;
  for (double h : hits) {
    x2 += (h - T * p) * (h - T * p) / scale;
    lo = std::min(lo, h / T);
    hi = std::max(hi, h / T);
  }
  boost::math::chi_squared dist(N - 1);
  const double pval = boost::math::cdf(boost::math::complement(dist, x2));
  return {pval > 0.001, fmt2("chi2=%.1f df=999 p=%.4f", x2, pval) +
                            fmt2(" freq in [%.4f, %.4f]", lo, hi)};
}

// 2 ------------------------------------------------------------------------

Outcome min_hash_correctness() {
  int matched = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const Graph g = erdos_renyi(150 + i, 0.05, 1000 + i);
    const std::size_t m = 20 + 3 * i;
    const std::uint64_t seed = derive_seed(i, 2);
    std::vector<std::pair<std::uint64_t, Edge>> offline;
    for (const Edge& e : g.edges()) offline.emplace_back(hash_edge(seed, e), e);
    std::sort(offline.begin(), offline.end());
    if (offline.size() > m) offline.resize(m);
    auto stream = EdgeStream::permuted(g, i, i % 2 ? StreamOrder::kKeyedHash
                                                   : StreamOrder::kShuffle);
    matched += stream_edge_reservoir(stream, m, seed).ascending() == offline;
  }
  return {matched == 100, std::to_string(matched) + "/100 exact matches"};
}

// 3 ------------------------------------------------------------------------

Outcome pies_cardinality() {
  std::size_t checks = 0, violations = 0, streams = 0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const Graph g = erdos_renyi(200 + i % 100, 0.03, 2000 + i % 50);
    const std::size_t n = 20 + i % 60;
    const auto mode = i % 2 ? PiesEviction::kMinDegree : PiesEviction::kUniform;
    auto stream = EdgeStream::permuted(g, i);
    PiesSampler p(n, derive_seed(i, 3), mode);
    while (const auto e = stream.next()) {
      p.offer(*e);
      if (p.filled()) {
        ++checks;
        violations += p.num_nodes() != n;
      }
    }
    const Graph out = p.graph();
    violations += out.num_nodes() != n;
    ++streams;
  }
  return {violations == 0 && checks > 0,
          std::to_string(streams) + " streams, " + std::to_string(checks) +
              " post-fill checks, " + std::to_string(violations) + " violations"};
}

// 4 ------------------------------------------------------------------------

Outcome esi_equivalence() {
  const Graph g = barabasi_albert(500, 3, 404);
  const auto truth = degree_distribution(g);
  double ks_static = 0, ks_stream = 0;
  const int trials = 50;
  SampleSpec spec;
  spec.phi = 0.2;
  const std::size_t n = target_node_count(spec, g.num_nodes());
  for (int t = 0; t < trials; ++t) {
    spec.seed = derive_seed(static_cast<std::uint64_t>(t), 4);
    ks_static += ks_distance(truth, degree_distribution(induced_edge_sample(g, spec).graph));
    auto stream = EdgeStream::permuted(g, static_cast<std::uint64_t>(t));
    const auto s = induced_edge_sample_two_pass(stream, n, spec.seed ^ 0x77);
    ks_stream += ks_distance(truth, degree_distribution(s.graph));
  }
  ks_static /= trials;
  ks_stream /= trials;
  const double diff = std::abs(ks_static - ks_stream);
  return {diff < 0.02, fmt2("mean degree KS static=%.4f two-pass=%.4f", ks_static, ks_stream) +
                           fmt(" |diff|=%.4f", diff)};
}

// 5 ------------------------------------------------------------------------

Outcome induction_soundness() {
  std::size_t samples = 0, bad = 0;
  const std::set<std::string> total = {"ns", "esi", "esi-2pass"};
  for (std::uint64_t gi = 0; gi < 4; ++gi) {
    const Graph g = gi % 2 ? barabasi_albert(400, 3, 500 + gi)
                           : erdos_renyi(400, 0.02, 500 + gi);
    std::set<std::pair<NodeId, NodeId>> pop;
    for (const Edge& e : g.edges()) pop.insert({e.u, e.v});
    for (const auto& method : method_names()) {
      for (std::uint64_t seed = 0; seed < 10; ++seed) {
        MethodParams mp;
        mp.spec.phi = 0.1 + 0.1 * static_cast<double>(seed % 4);
        mp.spec.seed = seed;
        mp.stream_seed = seed + 17;
        SampledSubgraph s;
        try {
          s = run_method(g, method, mp);
        } catch (const InvalidArgument&) {
          continue;  // edge-based target above the non-isolated nodes
        }
        if (s.graph.num_nodes() > 200) continue;
        ++samples;
        if (total.contains(method)) {
          bad += !oracle::totally_induced(g, s.graph);
        } else {
          for (const Edge& e : s.graph.edges()) bad += !pop.contains({e.u, e.v});
          for (NodeId id : s.graph.node_ids()) bad += !g.contains(id);
        }
      }
    }
  }
  return {bad == 0 && samples > 0,
          std::to_string(samples) + " samples, " + std::to_string(bad) + " violations"};
}

// 6 ------------------------------------------------------------------------

Outcome statistic_oracles() {
  std::size_t mism = 0;
  double worst_eig = 0;
  for (std::uint64_t i = 0; i < 20; ++i) {
    const std::size_t n = 60 + 12 * i;  // 60 .. 288
    const double p = (2.0 + static_cast<double>(i % 5) * 2.0) / static_cast<double>(n);
    const Graph g = i % 3 == 2 ? barabasi_albert(n, 2 + i % 3, 600 + i)
                               : erdos_renyi(n, p, 600 + i);
    const auto d = oracle::dense(g);
    mism += !same_pmf(degree_distribution(g), oracle::degree_pmf(d));
    mism += !same_pmf(path_length_distribution(g).pmf, oracle::path_pmf(d));
    mism += !same_pmf(clustering_distribution(g).pmf, oracle::clustering_pmf(d));
    const auto cores = core_numbers(g);
    const auto want = oracle::core_numbers(d);
    for (std::size_t v = 0; v < cores.size(); ++v) mism += static_cast<int>(cores[v]) != want[v];

    const auto ev = oracle::jacobi_eigenvalues(oracle::adjacency(d));
    for (std::size_t limit : {std::size_t{400}, std::size_t{0}}) {
      EigenOptions o;
      o.dense_limit = limit;
      o.tol = 1e-9;
      const auto r = adjacency_eigen(g, o);
      const std::size_t k = std::min<std::size_t>(25, ev.size());
      if (r.values.size() != k) {
        ++mism;
        continue;
      }
      for (std::size_t j = 0; j < k; ++j)
        worst_eig = std::max(worst_eig, std::abs(r.values[j] - ev[j]));
    }
  }
  return {mism == 0 && worst_eig <= 1e-5,
          std::to_string(mism) + " distribution/core mismatches over 20 graphs; " +
              fmt("max eigenvalue error %.2e", worst_eig)};
}

// 7 ------------------------------------------------------------------------

Outcome divergence_identities() {
  double worst_self = 0;
  for (std::uint64_t i = 0; i < 5; ++i) {
    const auto p = compute_profile(barabasi_albert(150 + 50 * i, 2, 700 + i));
    const auto r = compare_profiles(p, p);
    for (const auto& row : r.rows) worst_self = std::max(worst_self, std::abs(row.value));
  }
  struct Case {
    const char* name;
    double got, want;
  };
  const std::vector<Case> cases = {
      {"ks point 1 vs 2", ks_distance({{1, 1.0}}, {{2, 1.0}}), 1.0},
      {"ks uniform{1,2} vs point 2", ks_distance({{1, 0.5}, {2, 0.5}}, {{2, 1.0}}), 0.5},
      {"ks identical", ks_distance({{1, 0.4}, {3, 0.6}}, {{1, 0.4}, {3, 0.6}}), 0.0},
      {"sd identical", skew_divergence({{0, 0.7}, {1, 0.3}}, {{0, 0.7}, {1, 0.3}}), 0.0},
      {"sd [1,0] vs [0,1]", skew_divergence({{0, 1.0}}, {{1, 1.0}}, 0.99),
       0.98 * std::log(99.0)},
      {"l1 [2,4] vs [1,2]", normalized_l1(std::vector<double>{2, 4}, std::vector<double>{1, 2}),
       0.5},
      {"l1 [1] vs [3]", normalized_l1(std::vector<double>{1}, std::vector<double>{3}), 2.0},
      {"l2 [1,0] vs [0,1]", normalized_l2(std::vector<double>{1, 0}, std::vector<double>{0, 1}),
       std::sqrt(2.0)},
      {"l2 [3,4] vs [0,0]", normalized_l2(std::vector<double>{3, 4}, std::vector<double>{0, 0}),
       1.0},
  };
  std::string bad;
  for (const auto& c : cases)
    if (std::abs(c.got - c.want) > 1e-6) bad += std::string(" ") + c.name;
  const double sd_fwd = skew_divergence({{0, 0.7}, {1, 0.3}}, {{0, 0.2}, {1, 0.8}});
  const double sd_rev = skew_divergence({{0, 0.2}, {1, 0.8}}, {{0, 0.7}, {1, 0.3}});
  if (!(std::abs(sd_fwd - sd_rev) > 1e-9)) bad += " sd-asymmetry";
  const bool ok = worst_self <= 1e-12 && bad.empty();
  return {ok, fmt("self-distance max %.1e; ", worst_self) + std::to_string(cases.size()) +
                  " hand cases" + (bad.empty() ? " match" : " mismatched:" + bad) +
                  fmt("; sd[1,0|0,1]=%.6f", 0.98 * std::log(99.0))};
}

// 8 ------------------------------------------------------------------------

Outcome degree_bias_crossover() {
  const Graph g = barabasi_albert(10000, 3, 808);
  const double k_avg = 2.0 * static_cast<double>(g.num_edges()) /
                       static_cast<double>(g.num_nodes());
  std::map<std::size_t, double> ns, esi;
  SampleSpec spec;
  spec.phi = 0.01;
  const int trials = 1000;
  for (int t = 0; t < trials; ++t) {
    spec.seed = derive_seed(static_cast<std::uint64_t>(t), 8);
    const auto a = node_sample(g, spec);
    for (NodeId id : a.graph.node_ids()) ns[g.degree(g.index_of(id))] += 1.0;
    const auto b = induced_edge_sample(g, spec);
    for (NodeId id : b.graph.node_ids()) esi[g.degree(g.index_of(id))] += 1.0;
  }
  // Ratio of expected counts per original degree, over well-populated degrees.
  std::vector<std::pair<double, double>> ratio;
  for (const auto& [k, c] : ns)
    if (c >= 200) ratio.emplace_back(static_cast<double>(k), esi[k] / c);
  double cross = std::nan("");
  for (std::size_t i = 1; i < ratio.size(); ++i) {
    const auto [k0, r0] = ratio[i - 1];
    const auto [k1, r1] = ratio[i];
    if (r0 < 1.0 && r1 >= 1.0) {
      cross = k0 + (1.0 - r0) * (k1 - k0) / (r1 - r0);
      break;
    }
  }
  const bool ok = !std::isnan(cross) && std::abs(cross - k_avg) <= 0.1 * k_avg;
  return {ok, fmt2("crossover k=%.3f, k_avg=%.3f", cross, k_avg) +
                  fmt2(" (ratio at min degree %.3f, at 2k_avg %.3f)", ratio.front().second,
                       esi[static_cast<std::size_t>(2 * k_avg)] /
                           ns[static_cast<std::size_t>(2 * k_avg)])};
}

// 9 ------------------------------------------------------------------------

Outcome wvrn_cases() {
  const std::vector<Edge> e = {{0, 1}, {0, 2}, {5, 3}, {5, 4}};
  const auto lg = make_labeled_graph(Graph::from_edges(e), {{0, "B"},
                                                            {1, "A"},
                                                            {2, "A"},
                                                            {3, "A"},
                                                            {4, "B"},
                                                            {5, "A"}});
  std::vector<char> known(lg.graph.num_nodes(), 1);
  known[lg.graph.index_of(0)] = 0;
  known[lg.graph.index_of(5)] = 0;
  const auto st = wvrn_infer(lg, known);
  const auto r0 = st.row(lg.graph.index_of(0));
  const auto r5 = st.row(lg.graph.index_of(5));
  const bool unanimous = r0[0] == 1.0 && r0[1] == 0.0;
  const bool tie = r5[0] == 0.5 && r5[1] == 0.5;

  auto pp = planted_partition(400, 2, 0.06, 0.002, 909);
  std::unordered_map<NodeId, std::string> labels;
  for (NodeId id : pp.graph.node_ids())
    labels[id] = pp.block[static_cast<std::size_t>(id)] == 0 ? "A" : "B";
  const auto blocks = make_labeled_graph(std::move(pp.graph), labels);
  const auto rows = cv_auc(blocks, most_prevalent_class(blocks), {0.1}, 5, 99);
  double sum = 0;
  std::size_t count = 0;
  for (const auto& r : rows)
    if (!std::isnan(r.auc)) sum += r.auc, ++count;
  const double mean_auc = count ? sum / static_cast<double>(count) : 0.0;
  return {unanimous && tie && mean_auc >= 0.95,
          std::string("unanimous ") + (unanimous ? "exact" : "WRONG") + ", tie " +
              (tie ? "exact" : "WRONG") + fmt(", two-block AUC at 10%% labeled %.4f", mean_auc)};
}

// 13 (sparse half) ----------------------------------------------------------

struct SparseRun {
  std::size_t nodes = 0, edges = 0;
  int full = 0;     // PIES < NS < ES < BFS
  int partial = 0;  // PIES < NS < min(ES, BFS)
  std::map<std::string, double> mean;
};

SparseRun sparse_run(std::size_t n, double mean_degree, double max_degree,
                     std::uint64_t seed) {
  const auto w = power_law_weights(n, 2.1, mean_degree, max_degree);
  const Graph g = Graph::from_edges(chung_lu(w, seed).edges());

  ExperimentConfig cfg;
  cfg.datasets.push_back({"sparse", {}, std::make_shared<const Graph>(g)});
  cfg.methods = {"pies", "stream-ns", "stream-es", "stream-bfs"};
  cfg.phis = {0.2, 0.3};
  cfg.trials = 10;
  const auto result = run_experiment(cfg);

  SparseRun out;
  out.nodes = g.num_nodes();
  out.edges = g.num_edges();
  std::map<std::size_t, std::map<std::string, double>> by_trial;
  for (const auto& s : result.samples) {
    if (!s.error.empty()) throw std::runtime_error(s.method + ": " + s.error);
    by_trial[s.trial][s.method] += s.mean_ks / 2.0;
  }
  for (const auto& [t, m] : by_trial) {
    const double pies = m.at("pies"), ns = m.at("stream-ns");
    const double es = m.at("stream-es"), bfs = m.at("stream-bfs");
    out.full += pies < ns && ns < es && es < bfs;
    out.partial += pies < ns && ns < std::min(es, bfs);
    for (const auto& [k, v] : m) out.mean[k] += v / 10.0;
  }
  return out;
}

Outcome sparse_stream_ordering() {
  // Sparse heavy-tailed stand-ins sized after the Twitter and email graphs
  // (N, mean degree); isolated nodes are dropped as an edge list would.
  const SparseRun runs[] = {sparse_run(8581, 6.5, 1000, 1313),
                            sparse_run(10000, 11.8, 2000, 1414)};
  const char* names[] = {"twitter-like", "email-like"};
  bool ok = true;
  std::string detail;
  for (int i = 0; i < 2; ++i) {
    const auto& r = runs[i];
    ok = ok && r.full >= 8;
    char buf[320];
    std::snprintf(buf, sizeof buf,
                  "%s%s N=%zu: full order %d/10, PIES<NS<min(ES,BFS) %d/10 "
                  "(pies %.3f ns %.3f es %.3f bfs %.3f)",
                  i ? "; " : "", names[i], r.nodes, r.full, r.partial, r.mean.at("pies"),
                  r.mean.at("stream-ns"), r.mean.at("stream-es"), r.mean.at("stream-bfs"));
    detail += buf;
  }
  return {ok, detail};
}

}  // namespace

int main() {
  criterion(1, "reservoir uniformity", reservoir_uniformity);
  criterion(2, "min-hash correctness", min_hash_correctness);
  criterion(3, "PIES cardinality", pies_cardinality);
  criterion(4, "ES-i two-pass equivalence", esi_equivalence);
  criterion(5, "induction soundness", induction_soundness);
  criterion(6, "statistic oracles", statistic_oracles);
  criterion(7, "divergence identities", divergence_identities);
  criterion(8, "degree-bias crossover", degree_bias_crossover);
  criterion(9, "wvRN", wvrn_cases);
  criterion(13, "sparse stream ordering", sparse_stream_ordering, true);
  std::printf("%s: %d criteria failed, %d documented deviations\n", failures ? "FAIL" : "PASS",
              failures, deviations);
  return failures ? 1 : 0;
}
