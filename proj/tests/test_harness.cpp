#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "gsample/error.hpp"
#include "gsample/harness.hpp"

using namespace gsample;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig small_config() {
  ExperimentConfig cfg;
  cfg.datasets.push_back(
      {"toy", {}, std::make_shared<const Graph>(barabasi_albert(150, 2, 3))});
  cfg.methods = {"ns", "esi", "pies"};
  cfg.phis = {0.2, 0.3};
  cfg.trials = 2;
  return cfg;
}

}  // namespace

TEST_CASE("config parsing") {
  std::istringstream in(
      "# comment\n"
      "dataset.email = data/email.txt\n"
      "methods = ns, esi , pies-min\n"
      "phis = 0.1, 0.2\n"
      "trials = 3\n"
      "seed = 42\n"
      "permute = false\n"
      "pf = 0.5\n"
      "window = 50\n"
      "jobs = 2\n");
  const auto cfg = parse_config(in, "/base");
  REQUIRE(cfg.datasets.size() == 1);
  CHECK(cfg.datasets[0].name == "email");
  CHECK(cfg.datasets[0].path == std::filesystem::path("/base/data/email.txt"));
  CHECK(cfg.methods == std::vector<std::string>{"ns", "esi", "pies-min"});
  CHECK(cfg.phis == std::vector<double>{0.1, 0.2});
  CHECK(cfg.trials == 3);
  CHECK(cfg.base_seed == 42);
  CHECK(!cfg.permute);
  CHECK(cfg.burn_probability == 0.5);
  CHECK(cfg.window == 50);
  CHECK(cfg.jobs == 2);

  const ExperimentConfig defaults;
  CHECK(defaults.trials == 10);
  CHECK(defaults.phis.size() == 8);
  CHECK(defaults.phis.front() == doctest::Approx(0.05));
  CHECK(defaults.phis.back() == doctest::Approx(0.40));

  std::istringstream bad("trials = 2\nbogus = 1\n");
  try {
    parse_config(bad);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  std::istringstream bad_method("methods = ns, nope\n");
  CHECK_THROWS(parse_config(bad_method));
}

TEST_CASE("identity sampling gives zero distances") {
  ExperimentConfig cfg;
  cfg.datasets.push_back({"kite", {}, std::make_shared<const Graph>(fixture::kite())});
  cfg.methods = {"esi"};
  cfg.phis = {1.0};
  cfg.trials = 1;
  const auto r = run_experiment(cfg);
  CHECK(!r.rows.empty());
  for (const auto& row : r.rows) CHECK(row.value == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("the full-graph profile is computed once per dataset") {
  const auto r = run_experiment(small_config());
  CHECK(r.profile_computations == 1);
  CHECK(r.profile_cache_hits >= 3 * 2 * 2);
  CHECK(r.samples.size() == 3 * 2 * 2);
  for (const auto& s : r.samples) CHECK(s.error.empty());
  CHECK(r.snapshot.at("toy").at("true").size() == 1);
  CHECK(r.snapshot.at("toy").at("pies").size() == 2);
}

TEST_CASE("runs are deterministic, with or without worker threads") {
  auto cfg = small_config();
  const auto base = std::filesystem::temp_directory_path() / "gsample_tests";
  const auto a = base / "run_a", b = base / "run_b";
  std::filesystem::remove_all(a);
  std::filesystem::remove_all(b);
  write_experiment(run_experiment(cfg), a);
  cfg.jobs = 3;
  write_experiment(run_experiment(cfg), b);
  for (const char* f : {"raw.csv", "samples.csv", "means.csv", "aggregate.csv", "run.json"}) {
    CAPTURE(f);
    CHECK(std::filesystem::exists(a / f));
    CHECK(slurp(a / f) == slurp(b / f));
  }
  CHECK(std::filesystem::exists(a / "plot" / "toy"));
}

TEST_CASE("method streams within a trial share one order") {
  // The stream seed depends on the trial only; two stream samplers on the
  // same trial see the same permutation, so running one method alone must
  // reproduce its rows from the combined run.
  auto cfg = small_config();
  const auto both = run_experiment(cfg);
  cfg.methods = {"pies"};
  const auto alone = run_experiment(cfg);
  std::vector<ResultRow> from_both;
  for (const auto& r : both.rows)
    if (r.method == "pies") from_both.push_back(r);
  REQUIRE(from_both.size() == alone.rows.size());
  for (std::size_t i = 0; i < alone.rows.size(); ++i)
    CHECK(from_both[i].value == alone.rows[i].value);
}

TEST_CASE("means and cross-dataset aggregates") {
  std::vector<ResultRow> rows = {{"a", "ns", 0.2, 0, "degree", "ks", 0.1},
                                 {"a", "ns", 0.2, 1, "degree", "ks", 0.3},
                                 {"a", "ns", 0.2, 2, "degree", "ks", std::nan("")}};
  const auto m = mean_rows(rows);
  REQUIRE(m.size() == 1);
  CHECK(m[0].mean == doctest::Approx(0.2));
  CHECK(m[0].count == 2);
  const auto single = mean_rows(std::span(rows).first(1));
  CHECK(single[0].mean == doctest::Approx(0.1));

  std::vector<MeanRow> means = {{"a", "ns", 0.2, "degree", "ks", 0.1, 10},
                                {"b", "ns", 0.2, "degree", "ks", 0.5, 3}};
  const auto agg = aggregate_across_datasets(means);
  REQUIRE(agg.size() == 1);
  CHECK(agg[0].mean == doctest::Approx(0.3));
  CHECK(agg[0].count == 2);
  CHECK_THROWS(mean_rows(std::span<const ResultRow>{}));
  CHECK_THROWS(aggregate_across_datasets(std::span<const MeanRow>{}));
}

TEST_CASE("averaged curves: CCDF is one minus CDF") {
  const auto r = run_experiment(small_config());
  const auto& profiles = r.snapshot.at("toy").at("ns");
  for (const char* stat : {"degree", "path_length", "clustering", "kcore"}) {
    const auto c = averaged_curve(profiles, stat);
    REQUIRE(!c.empty());
    for (const auto& p : c) CHECK(p.ccdf == doctest::Approx(1.0 - p.cdf).epsilon(1e-12));
    CHECK(c.back().cdf == doctest::Approx(1.0));
  }
}

TEST_CASE("sampler failures are recorded per row and the run continues") {
  ExperimentConfig cfg;
  const std::vector<Edge> e = {{1, 2}};
  const std::vector<NodeId> iso = {3, 4, 5, 6, 7, 8};
  cfg.datasets.push_back(
      {"sparse", {}, std::make_shared<const Graph>(Graph::from_edges(e, iso))});
  cfg.methods = {"es", "ns"};
  cfg.phis = {0.8};
  cfg.trials = 1;
  const auto r = run_experiment(cfg);
  REQUIRE(r.samples.size() == 2);
  CHECK(!r.samples[0].error.empty());
  CHECK(r.samples[1].error.empty());
}
