#include <doctest.h>

#include <cmath>
#include <map>
#include <set>
#include <tuple>
#include <sstream>

#include "fixtures.hpp"
#include "gsample/error.hpp"
#include "gsample/hashing.hpp"
#include "gsample/generators.hpp"
#include "gsample/relational.hpp"

using namespace gsample;

namespace {

LabeledGraph two_blocks(std::size_t n, double p_in, double p_out, std::uint64_t seed) {
  auto pp = planted_partition(n, 2, p_in, p_out, seed);
  std::unordered_map<NodeId, std::string> labels;
  for (NodeId id : pp.graph.node_ids())
    labels[id] = pp.block[static_cast<std::size_t>(id)] == 0 ? "A" : "B";
  return make_labeled_graph(std::move(pp.graph), labels);
}

LabeledGraph labeled(const std::vector<Edge>& e,
                     const std::unordered_map<NodeId, std::string>& labels) {
  return make_labeled_graph(Graph::from_edges(e), labels);
}

}  // namespace

TEST_CASE("class priors from samples") {
  const auto lg = labeled({{1, 2}, {2, 3}, {3, 4}}, {{1, "A"}, {2, "A"}, {3, "B"}, {4, "A"}});
  const std::vector<NodeId> all = {1, 2, 3, 4};
  const auto p = estimate_class_priors(lg, all);
  CHECK(p == class_distribution(lg));
  CHECK(p[0] == doctest::Approx(0.75));
  const std::vector<NodeId> one = {3};
  CHECK(estimate_class_priors(lg, one)[1] == doctest::Approx(1.0));
  CHECK_THROWS_AS(estimate_class_priors(lg, std::vector<NodeId>{}), InvalidArgument);
  CHECK(most_prevalent_class(lg) == 0);
  CHECK_THROWS_AS(make_labeled_graph(fixture::kite(), {{1, "A"}}), InvalidArgument);
}

TEST_CASE("wvRN: unanimous neighborhood and symmetric tie") {
  // Node 0 with neighbors 1, 2 (both A); node 5 with neighbors 3 (A), 4 (B).
  const auto lg = labeled({{0, 1}, {0, 2}, {5, 3}, {5, 4}},
                          {{0, "B"}, {1, "A"}, {2, "A"}, {3, "A"}, {4, "B"}, {5, "A"}});
  std::vector<char> known(lg.graph.num_nodes(), 1);
  known[lg.graph.index_of(0)] = 0;
  known[lg.graph.index_of(5)] = 0;
  const auto st = wvrn_infer(lg, known);
  const auto r0 = st.row(lg.graph.index_of(0));
  CHECK(r0[0] == doctest::Approx(1.0));
  CHECK(r0[1] == doctest::Approx(0.0));
  const auto r5 = st.row(lg.graph.index_of(5));
  CHECK(r5[0] == doctest::Approx(0.5));
  CHECK(r5[1] == doctest::Approx(0.5));
  CHECK(st.converged);
  for (NodeIndex i = 0; i < lg.graph.num_nodes(); ++i) {
    double s = 0;
    for (double x : st.row(i)) s += x;
    CHECK(s == doctest::Approx(1.0).epsilon(1e-9));
    if (known[i]) CHECK(st.row(i)[lg.labels[i]] == 1.0);
  }
}

TEST_CASE("wvRN recovers planted blocks") {
  const auto lg = two_blocks(200, 0.15, 0.0, 3);
  const auto st = wvrn_classify(lg, 0.1, 7);
  std::size_t agree = 0, unknown = 0;
  for (NodeIndex i = 0; i < lg.graph.num_nodes(); ++i) {
    if (st.known[i]) continue;
    ++unknown;
    const auto r = st.row(i);
    const std::uint32_t guess = r[0] >= r[1] ? 0 : 1;
    agree += guess == lg.labels[i];
  }
  CHECK(static_cast<double>(agree) / unknown >= 0.95);
}

TEST_CASE("wvRN is invariant to rescaling edge weights") {
  auto lg = two_blocks(80, 0.2, 0.05, 4);
  Rng rng(1);
  for (const Edge& e : lg.graph.edges()) lg.weights[e] = 0.5 + rng.uniform01();
  auto scaled = lg;
  for (auto& [e, w] : scaled.weights) w *= 3.5;
  const auto a = wvrn_classify(lg, 0.3, 9);
  const auto b = wvrn_classify(scaled, 0.3, 9);
  REQUIRE(a.prob.size() == b.prob.size());
  for (std::size_t i = 0; i < a.prob.size(); ++i)
    CHECK(a.prob[i] == doctest::Approx(b.prob[i]).epsilon(1e-9));
}

TEST_CASE("isolated unlabeled nodes keep the labeled prior") {
  const std::vector<Edge> e = {{1, 2}, {2, 3}};
  const std::vector<NodeId> iso = {9};
  auto lg = make_labeled_graph(Graph::from_edges(e, iso),
                               {{1, "A"}, {2, "A"}, {3, "B"}, {9, "A"}});
  std::vector<char> known = {1, 1, 1, 0};
  const auto st = wvrn_infer(lg, known);
  const auto r = st.row(lg.graph.index_of(9));
  CHECK(r[0] == doctest::Approx(2.0 / 3.0));
  CHECK(r[1] == doctest::Approx(1.0 / 3.0));
  const std::vector<char> none(4, 0);
  CHECK_THROWS_AS(wvrn_infer(lg, none), InvalidArgument);
}

TEST_CASE("AUC examples") {
  const std::vector<char> truth = {1, 0, 1, 0};
  CHECK(auc(std::vector<double>{0.9, 0.4, 0.8, 0.1}, truth) == doctest::Approx(1.0));
  CHECK(auc(std::vector<double>{0.1, 0.9, 0.2, 0.8}, truth) == doctest::Approx(0.0));
  CHECK(auc(std::vector<double>{0.5, 0.5, 0.5, 0.5}, truth) == doctest::Approx(0.5));
  CHECK(auc(std::vector<double>{0.9, 0.8, 0.7, 0.1}, truth) == doctest::Approx(0.75));
  CHECK_THROWS_AS(auc(std::vector<double>{0.1, 0.2}, std::vector<char>{1, 1}),
                  InvalidArgument);
  // Strictly monotone transform.
  const std::vector<double> s = {0.3, 0.6, 0.2, 0.9, 0.5};
  const std::vector<char> t = {0, 1, 0, 1, 1};
  std::vector<double> s2;
  for (double x : s) s2.push_back(std::exp(5 * x) - 2);
  CHECK(auc(s, t) == doctest::Approx(auc(s2, t)));
}

TEST_CASE("folds partition the nodes evenly") {
  const auto f = assign_folds(103, 5, 11);
  REQUIRE(f.size() == 103);
  std::vector<int> sizes(5, 0);
  for (auto x : f) {
    REQUIRE(x < 5);
    sizes[x]++;
  }
  for (int s : sizes) CHECK((s == 20 || s == 21));
  CHECK(assign_folds(103, 5, 11) == f);
  CHECK(assign_folds(103, 5, 12) != f);
}

TEST_CASE("identity sampling reproduces the full-graph AUC") {
  const auto lg = two_blocks(150, 0.1, 0.02, 5);
  CvConfig cfg;
  cfg.method = "esi";
  cfg.params.spec.phi = 1.0;
  cfg.labeled_fracs = {0.2, 0.5};
  cfg.trials = 2;
  cfg.seed = 3;
  const auto rows = cv_experiment(lg, cfg);
  std::map<std::tuple<double, std::size_t, std::size_t>, double> full, sample;
  for (const auto& r : rows) {
    auto& m = r.graph == "full" ? full : sample;
    m[{r.labeled_frac, r.fold, r.trial}] = r.auc;
  }
  CHECK(full.size() == 2 * 5 * 2);
  CHECK(full == sample);
  const auto summary = summarize_auc(rows);
  CHECK(summary.size() == 4);
  for (const auto& s : summary) CHECK(s.mean_auc > 0.8);
  std::ostringstream out;
  write_auc_table(out, rows);
  CHECK(out.str().rfind("graph,method,phi,labeled_frac,fold,trial,auc\n", 0) == 0);
}

TEST_CASE("sampled subgraphs carry population labels") {
  const auto lg = two_blocks(60, 0.2, 0.05, 8);
  const std::vector<NodeId> keep = {0, 1, 2, 3, 10, 11};
  const Graph sub = induced_subgraph(lg.graph, keep);
  const auto sl = restrict_labels(lg, sub);
  CHECK(sl.classes == lg.classes);
  for (NodeId id : sub.node_ids()) CHECK(sl.label_of(id) == lg.label_of(id));
}
