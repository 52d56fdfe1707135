#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "gsample/gsample.h"

namespace {

std::filesystem::path scratch() {
  const auto d = std::filesystem::temp_directory_path() / "gsample_c_api";
  std::filesystem::create_directories(d);
  return d;
}

gs_graph* ring(int n) {
  std::vector<int64_t> u, v;
  for (int i = 0; i < n; ++i) {
    u.push_back(i);
    v.push_back((i + 1) % n);
    u.push_back(i);
    v.push_back((i + 7) % n);
  }
  gs_graph* g = nullptr;
  REQUIRE(gs_graph_from_edges(u.data(), v.data(), u.size(), &g) == GS_OK);
  return g;
}

}  // namespace

TEST_CASE("graph handles") {
  const auto p = scratch() / "kite.txt";
  std::ofstream(p) << "1 2\n2 3\n1 3\n3 4\n";
  gs_graph* g = nullptr;
  REQUIRE(gs_graph_load(p.c_str(), 1, 1, &g) == GS_OK);
  CHECK(gs_graph_num_nodes(g) == 4);
  CHECK(gs_graph_num_edges(g) == 4);
  CHECK(std::string(gs_last_error()).empty());
  gs_graph_free(g);

  gs_graph* missing = nullptr;
  CHECK(gs_graph_load("/nonexistent/x.txt", 1, 1, &missing) == GS_ERR_IO);
  CHECK(missing == nullptr);
  CHECK(std::string(gs_last_error()).size() > 0);
  CHECK(std::string(gs_status_name(GS_ERR_PARSE)) == "parse error");
  CHECK(gs_graph_load(nullptr, 1, 1, &g) == GS_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(gs_version()) > 0);
}

TEST_CASE("sampling, profiles and comparison through the C API") {
  gs_graph* g = ring(200);
  CHECK(gs_method_count() == 10);
  for (size_t i = 0; i < gs_method_count(); ++i) {
    gs_sample_params sp;
    gs_sample_params_init(&sp);
    sp.phi = 0.25;
    gs_sample* s = nullptr;
    CAPTURE(gs_method_name(i));
    REQUIRE(gs_sample_run(g, gs_method_name(i), &sp, &s) == GS_OK);
    const size_t n = gs_graph_num_nodes(gs_sample_graph(s));
    CHECK(n >= 50);
    CHECK(n <= 51);
    CHECK(std::string(gs_sample_metadata_json(s)).find(gs_method_name(i)) != std::string::npos);
    gs_sample_free(s);
  }
  gs_sample_params sp;
  gs_sample_params_init(&sp);
  gs_sample* s = nullptr;
  CHECK(gs_sample_run(g, "bogus", &sp, &s) == GS_ERR_INVALID_ARGUMENT);
  sp.phi = 1.5;
  CHECK(gs_sample_run(g, "ns", &sp, &s) == GS_ERR_INVALID_ARGUMENT);

  gs_profile_params pp;
  gs_profile_params_init(&pp);
  gs_profile* full = nullptr;
  REQUIRE(gs_profile_compute(g, &pp, &full) == GS_OK);
  CHECK(gs_profile_max_core(full) == 4);
  double ev[30];
  CHECK(gs_profile_eigenvalues(full, ev, 30) == 25);
  CHECK(ev[0] == doctest::Approx(4.0));

  const auto dir = scratch() / "profile";
  std::filesystem::remove_all(dir);
  REQUIRE(gs_profile_write(full, dir.c_str()) == GS_OK);
  gs_profile* back = nullptr;
  REQUIRE(gs_profile_read(dir.c_str(), &back) == GS_OK);
  gs_report* r = nullptr;
  REQUIRE(gs_compare(full, back, 0.99, &r) == GS_OK);
  CHECK(gs_report_mean_ks(r) == 0.0);
  CHECK(gs_report_value(r, "eigenvalues", "l1") == 0.0);
  CHECK(std::isnan(gs_report_value(r, "nope", "ks")));
  const auto rp = scratch() / "report.csv";
  CHECK(gs_report_write(r, rp.c_str()) == GS_OK);
  CHECK(std::filesystem::file_size(rp) > 0);
  gs_report_free(r);
  gs_profile_free(back);
  gs_profile_free(full);
  gs_graph_free(g);
}

TEST_CASE("sample files round-trip with their sidecar") {
  gs_graph* g = ring(100);
  gs_sample_params sp;
  gs_sample_params_init(&sp);
  sp.nodes = 30;
  gs_sample* s = nullptr;
  REQUIRE(gs_sample_run(g, "pies", &sp, &s) == GS_OK);
  const auto p = scratch() / "s.txt";
  REQUIRE(gs_sample_write(s, p.c_str()) == GS_OK);
  gs_graph* back = nullptr;
  REQUIRE(gs_graph_load_sample(p.c_str(), &back) == GS_OK);
  CHECK(gs_graph_num_nodes(back) == gs_graph_num_nodes(gs_sample_graph(s)));
  CHECK(gs_graph_num_edges(back) == gs_graph_num_edges(gs_sample_graph(s)));
  gs_graph_free(back);
  gs_sample_free(s);

  const auto stream = scratch() / "stream.txt";
  REQUIRE(gs_permute_write(g, 5, 0, stream.c_str()) == GS_OK);
  gs_sample* fs = nullptr;
  REQUIRE(gs_sample_run_file_stream(stream.c_str(), "stream-ns", &sp, &fs) == GS_OK);
  CHECK(gs_graph_num_nodes(gs_sample_graph(fs)) == 30);
  gs_sample_free(fs);
  gs_graph_free(g);
}

TEST_CASE("classification run writes the AUC table") {
  std::vector<int64_t> u, v;
  const auto labels = scratch() / "labels.csv";
  std::ofstream lab(labels);
  lab << "node_id,label\n";
  for (int i = 0; i < 80; ++i) {
    lab << i << ',' << (i < 40 ? "A" : "B") << '\n';
    const int base = i < 40 ? 0 : 40;
    for (int k = 1; k <= 3; ++k) {
      u.push_back(i);
      v.push_back(base + (i - base + k) % 40);
    }
  }
  lab.close();
  gs_graph* g = nullptr;
  REQUIRE(gs_graph_from_edges(u.data(), v.data(), u.size(), &g) == GS_OK);
  gs_sample_params sp;
  gs_sample_params_init(&sp);
  sp.phi = 0.5;
  gs_classify_params cp;
  gs_classify_params_init(&cp);
  const double fracs[] = {0.3};
  cp.labeled_fracs = fracs;
  cp.num_labeled_fracs = 1;
  const auto out = scratch() / "auc.csv";
  REQUIRE(gs_classify_run(g, labels.c_str(), "esi", &sp, &cp, out.c_str()) == GS_OK);
  CHECK(std::filesystem::exists(out));
  CHECK(std::filesystem::exists(out.string() + ".summary.csv"));
  CHECK(gs_classify_run(g, "/nonexistent.csv", "esi", &sp, &cp, out.c_str()) == GS_ERR_IO);
  gs_graph_free(g);
}
