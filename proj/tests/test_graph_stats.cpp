#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numeric>

#include "fixtures.hpp"
#include "gsample/error.hpp"
#include "gsample/graph_stats.hpp"
#include "gsample/static_samplers.hpp"
#include "oracles.hpp"

using namespace gsample;

namespace {

void check_same(const Distribution& a, const std::map<std::int64_t, double>& b) {
  REQUIRE(a.size() == b.size());
  for (const auto& [k, v] : b) {
    REQUIRE(a.contains(k));
    CHECK(a.at(k) == doctest::Approx(v).epsilon(1e-12));
  }
}

double total(const Distribution& d) {
  double s = 0;
  for (const auto& [k, v] : d) s += v;
  return s;
}

Graph two_components() {
  const std::vector<Edge> e = {{0, 1}, {1, 2}, {0, 2}, {10, 11}};
  return Graph::from_edges(e);
}

}  // namespace

TEST_CASE("degree distribution examples") {
  const auto kite = degree_distribution(fixture::kite());
  CHECK(kite.at(1) == doctest::Approx(0.25));
  CHECK(kite.at(2) == doctest::Approx(0.5));
  CHECK(kite.at(3) == doctest::Approx(0.25));
  CHECK(degree_distribution(fixture::complete(3)).at(2) == doctest::Approx(1.0));
  const Graph g = fixture::random_graph(1000, 0.01, 1);
  check_same(degree_distribution(g), oracle::degree_pmf(oracle::dense(g)));
}

TEST_CASE("path length distribution examples") {
  const auto kite = path_length_distribution(fixture::kite());
  CHECK(kite.pmf.at(1) == doctest::Approx(2.0 / 3.0));
  CHECK(kite.pmf.at(2) == doctest::Approx(1.0 / 3.0));
  CHECK(kite.exact);
  CHECK(kite.reachable_pairs == 12);
  CHECK(path_length_distribution(fixture::complete(3)).pmf.at(1) == doctest::Approx(1.0));
  const Graph g = fixture::random_graph(300, 0.015, 2);
  check_same(path_length_distribution(g).pmf, oracle::path_pmf(oracle::dense(g)));
  const auto split = path_length_distribution(two_components());
  CHECK(split.reachable_pairs == 8);
}

TEST_CASE("sampled-source path lengths approximate the exact distribution") {
  const Graph g = fixture::random_graph(600, 0.01, 3);
  PathLengthOptions o;
  o.exact_limit = 100;
  o.sources = 200;
  const auto approx = path_length_distribution(g, o);
  CHECK(!approx.exact);
  CHECK(approx.sources == 200);
  const auto exact = path_length_distribution(g);
  CHECK(oracle::ks(approx.pmf, exact.pmf) < 0.05);
  CHECK(total(approx.pmf) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("clustering examples") {
  const Graph k = fixture::kite();
  CHECK(local_clustering(k, k.index_of(1)) == doctest::Approx(1.0));
  CHECK(local_clustering(k, k.index_of(2)) == doctest::Approx(1.0));
  CHECK(local_clustering(k, k.index_of(3)) == doctest::Approx(1.0 / 3.0));
  CHECK(local_clustering(k, k.index_of(4)) == 0.0);
  const auto d = clustering_distribution(k);
  CHECK(d.eligible == 3);
  CHECK(d.pmf.at(99) == doctest::Approx(2.0 / 3.0));
  CHECK(d.pmf.at(33) == doctest::Approx(1.0 / 3.0));
  CHECK(d.mean == doctest::Approx((1.0 + 1.0 + 1.0 / 3.0) / 3.0));
  const auto tree = clustering_distribution(fixture::star(6));
  CHECK(tree.pmf.at(0) == doctest::Approx(1.0));
  CHECK(clustering_bin(0, 5) == 0);
  CHECK(clustering_bin(1, 3) == 33);
  CHECK(clustering_bin(3, 3) == 99);
  // cc = 0.5 exactly sits in bin 49 (right-closed).
  CHECK(clustering_bin(3, 4) == 49);
  CHECK(clustering_distribution(fixture::path(2)).empty());
}

TEST_CASE("clustering matches the brute-force histogram") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Graph g = fixture::random_graph(200, 0.08, seed);
    check_same(clustering_distribution(g).pmf, oracle::clustering_pmf(oracle::dense(g)));
  }
}

TEST_CASE("k-core examples and invariants") {
  const Graph k = fixture::kite();
  const auto c = core_numbers(k);
  CHECK(c[k.index_of(4)] == 1);
  CHECK(c[k.index_of(1)] == 2);
  CHECK(kcore_distribution(k).max_core == 2);
  CHECK(kcore_distribution(fixture::path(10)).max_core == 1);
  const auto k5 = kcore_distribution(fixture::complete(5));
  CHECK(k5.max_core == 4);
  CHECK(k5.pmf.at(4) == doctest::Approx(1.0));
  const std::vector<Edge> e = {{1, 2}};
  const std::vector<NodeId> iso = {3};
  CHECK(kcore_distribution(Graph::from_edges(e, iso)).pmf.at(0) == doctest::Approx(1.0 / 3.0));

  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Graph g = fixture::random_graph(150, 0.07, seed + 10);
    const auto got = core_numbers(g);
    const auto want = oracle::core_numbers(oracle::dense(g));
    for (NodeIndex i = 0; i < g.num_nodes(); ++i) {
      CHECK(static_cast<int>(got[i]) == want[i]);
      CHECK(got[i] <= g.degree(i));
    }
    const std::uint32_t top = *std::max_element(got.begin(), got.end());
    for (std::uint32_t kk = 1; kk <= top; ++kk) {
      std::vector<NodeId> members;
      for (NodeIndex i = 0; i < g.num_nodes(); ++i)
        if (got[i] >= kk) members.push_back(g.id(i));
      const Graph sub = induced_subgraph(g, members);
      for (NodeIndex i = 0; i < sub.num_nodes(); ++i) CHECK(sub.degree(i) >= kk);
    }
  }
}

TEST_CASE("eigenvalue examples") {
  const auto k3 = top_eigenvalues(fixture::complete(3), 25);
  REQUIRE(k3.size() == 3);
  CHECK(k3[0] == doctest::Approx(2.0));
  CHECK(k3[1] == doctest::Approx(-1.0));
  CHECK(k3[2] == doctest::Approx(-1.0));
  CHECK(top_eigenvalues(fixture::complete(3), 1).size() == 1);
  CHECK(top_eigenvalues(fixture::star(4), 1)[0] == doctest::Approx(2.0));
}

TEST_CASE("eigenvalues match a Jacobi oracle, dense and Lanczos paths") {
  const Graph g = fixture::random_graph(200, 0.05, 7);
  const auto want = oracle::jacobi_eigenvalues(oracle::adjacency(oracle::dense(g)));
  for (std::size_t limit : {std::size_t{400}, std::size_t{0}}) {
    EigenOptions o;
    o.dense_limit = limit;
    o.tol = 1e-9;
    const auto r = adjacency_eigen(g, o);
    CHECK(r.converged);
    REQUIRE(r.values.size() == 25);
    for (std::size_t i = 0; i < 25; ++i) CHECK(std::abs(r.values[i] - want[i]) < 1e-5);
    CHECK(r.principal_residual <= 1e-6);
  }
}

TEST_CASE("principal eigenvector examples") {
  const auto k3 = network_values(fixture::complete(3), 100);
  REQUIRE(k3.size() == 3);
  for (double x : k3) CHECK(x == doctest::Approx(1.0 / std::sqrt(3.0)));
  const Graph star = fixture::star(4);
  const auto r = adjacency_eigen(star);
  const double hub = std::abs(r.principal[star.index_of(0)]);
  const double leaf = std::abs(r.principal[star.index_of(1)]);
  CHECK(hub / leaf == doctest::Approx(2.0));
  std::vector<double> oracle_vec;
  oracle::jacobi_eigenvalues(oracle::adjacency(oracle::dense(star)), &oracle_vec);
  CHECK(std::abs(oracle_vec[0]) / std::abs(oracle_vec[1]) == doctest::Approx(2.0));

  const Graph split = two_components();
  const auto nv = network_values(split, 100);
  REQUIRE(nv.size() == 5);
  for (int i = 0; i < 3; ++i) CHECK(nv[i] == doctest::Approx(1.0 / std::sqrt(3.0)));
  CHECK(nv[3] == doctest::Approx(0.0).epsilon(1e-9));
  double norm = 0;
  for (double x : nv) norm += x * x;
  CHECK(norm == doctest::Approx(1.0));
  for (std::size_t i = 1; i < nv.size(); ++i) CHECK(nv[i] <= nv[i - 1]);
}

TEST_CASE("Lanczos principal eigenvector on a large component") {
  const Graph g = fixture::random_graph(800, 0.01, 9);
  EigenOptions o;
  o.dense_limit = 0;
  const auto r = adjacency_eigen(g, o);
  CHECK(r.converged);
  // Residual ||A x - l x|| computed here from the adjacency lists.
  double res = 0, norm = 0;
  for (NodeIndex i = 0; i < g.num_nodes(); ++i) {
    double ax = 0;
    for (NodeIndex w : g.neighbors(i)) ax += r.principal[w];
    res += (ax - r.values[0] * r.principal[i]) * (ax - r.values[0] * r.principal[i]);
    norm += r.principal[i] * r.principal[i];
  }
  CHECK(std::sqrt(res) <= 1e-6 * std::sqrt(norm) * std::max(1.0, r.values[0]));
  CHECK(norm == doctest::Approx(1.0));
}

TEST_CASE("average degree estimation") {
  const Graph k = fixture::kite();
  const std::vector<NodeId> all = {1, 2, 3, 4};
  CHECK(estimate_average_degree(k, all) == doctest::Approx(2.0));
  const std::vector<NodeId> three = {3};
  CHECK(estimate_average_degree(k, three) == doctest::Approx(3.0));
  const Graph g = barabasi_albert(500, 2, 3);
  double sum = 0;
  const int trials = 100;
  for (int t = 0; t < trials; ++t) {
    SampleSpec s;
    s.phi = 0.1;
    s.seed = static_cast<std::uint64_t>(t);
    const auto out = edge_sample(g, s);
    sum += estimate_average_degree(g, out.graph.node_ids());
  }
  CHECK(sum / trials > g.average_degree());
}

TEST_CASE("profiles sum to one and round-trip through disk") {
  const Graph g = fixture::random_graph(120, 0.05, 5);
  const auto p = compute_profile(g);
  CHECK(total(p.degree) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(total(p.path_length.pmf) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(total(p.clustering.pmf) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(total(p.kcore.pmf) == doctest::Approx(1.0).epsilon(1e-9));
  for (std::size_t i = 1; i < p.eigenvalues.size(); ++i)
    CHECK(p.eigenvalues[i] <= p.eigenvalues[i - 1]);
  for (double x : p.network_values) CHECK(x >= 0.0);

  const auto dir = std::filesystem::temp_directory_path() / "gsample_tests" / "profile";
  std::filesystem::remove_all(dir);
  write_profile(p, dir);
  const auto q = read_profile(dir);
  CHECK(q.num_nodes == p.num_nodes);
  CHECK(q.num_edges == p.num_edges);
  CHECK(q.degree == p.degree);
  CHECK(q.path_length.pmf == p.path_length.pmf);
  CHECK(q.clustering.pmf == p.clustering.pmf);
  CHECK(q.kcore.pmf == p.kcore.pmf);
  CHECK(q.kcore.max_core == p.kcore.max_core);
  CHECK(q.eigenvalues == p.eigenvalues);
  CHECK(q.network_values == p.network_values);
  CHECK_THROWS(read_profile(dir / "missing"));
}

TEST_CASE("cdf and ccdf are complementary") {
  const Distribution d = {{1, 0.2}, {3, 0.5}, {7, 0.3}};
  const auto c = cdf(d);
  const auto cc = ccdf(d);
  REQUIRE(c.size() == 3);
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK(c[i].first == cc[i].first);
    CHECK(cc[i].second == doctest::Approx(1.0 - c[i].second));
  }
  CHECK(c.back().second == doctest::Approx(1.0));
}
