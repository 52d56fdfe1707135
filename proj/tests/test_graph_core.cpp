#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "gsample/edge_io.hpp"
#include "gsample/edge_stream.hpp"
#include "gsample/error.hpp"
#include "gsample/hashing.hpp"
#include "gsample/sampled_subgraph.hpp"
#include "oracles.hpp"

using namespace gsample;

namespace {

std::filesystem::path temp_file(const std::string& name, const std::string& body) {
  const auto dir = std::filesystem::temp_directory_path() / "gsample_tests";
  std::filesystem::create_directories(dir);
  const auto p = dir / name;
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST_CASE("load_edge_list reads the kite") {
  const auto p = temp_file("kite.txt", "1 2\n2 3\n1 3\n3 4\n");
  const Graph g = load_edge_list(p);
  CHECK(g.num_nodes() == 4);
  CHECK(g.num_edges() == 4);
  CHECK(g == fixture::kite());
}

TEST_CASE("reverse duplicates and comments collapse") {
  std::istringstream in("# comment\n1 2\n\n2 1\n 1\t2  extra\n2 3\n");
  const auto edges = parse_edge_list(in);
  const Graph g = Graph::from_edges(edges);
  CHECK(g.num_edges() == 2);
  CHECK(g.has_edge_ids(1, 2));
  CHECK(g.has_edge_ids(2, 1));
}

TEST_CASE("self-loops are dropped by default and rejected on request") {
  std::istringstream a("1 1\n1 2\n");
  CHECK(Graph::from_edges(parse_edge_list(a)).num_edges() == 1);
  std::istringstream b("1 2\n3 3\n");
  LoadOptions strict;
  strict.skip_self_loops = false;
  try {
    parse_edge_list(b, strict);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("duplicates are an error when dedupe is off") {
  std::istringstream in("1 2\n2 1\n");
  LoadOptions strict;
  strict.dedupe = false;
  CHECK_THROWS_AS(parse_edge_list(in, strict), ParseError);
}

TEST_CASE("malformed line names its line number") {
  std::istringstream in("1 2\n# ok\n3 x\n");
  try {
    parse_edge_list(in);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  std::istringstream single("5\n");
  CHECK_THROWS_AS(parse_edge_list(single), ParseError);
}

TEST_CASE("empty or missing files raise typed errors") {
  const auto p = temp_file("empty.txt", "# nothing\n\n");
  CHECK_THROWS_AS(load_edge_list(p), EmptyGraphError);
  CHECK_THROWS_AS(load_edge_list("/nonexistent/edges.txt"), IoError);
}

TEST_CASE("node ids are kept verbatim") {
  std::istringstream in("-5 1000000000000\n7 -5\n");
  const Graph g = Graph::from_edges(parse_edge_list(in));
  CHECK(g.contains(-5));
  CHECK(g.contains(1000000000000));
  CHECK(g.degree(g.index_of(-5)) == 2);
  CHECK_THROWS_AS(g.index_of(3), UnknownNodeError);
}

TEST_CASE("graph invariants: symmetric, simple, M = sum(deg)/2") {
  const Graph g = fixture::random_graph(200, 0.05, 3);
  std::size_t sum = 0;
  for (NodeIndex i = 0; i < g.num_nodes(); ++i) {
    sum += g.degree(i);
    for (NodeIndex w : g.neighbors(i)) {
      CHECK(w != i);
      CHECK(g.has_edge(w, i));
    }
  }
  CHECK(sum == 2 * g.num_edges());
}

TEST_CASE("permuted stream is deterministic and exactly-once") {
  const Graph g = fixture::kite();
  for (auto order : {StreamOrder::kShuffle, StreamOrder::kKeyedHash}) {
    auto a = EdgeStream::permuted(g, 7, order);
    auto b = EdgeStream::permuted(g, 7, order);
    std::vector<Edge> sa, sb;
    while (auto e = a.next()) sa.push_back(*e);
    while (auto e = b.next()) sb.push_back(*e);
    CHECK(sa == sb);
    CHECK(sa.size() == 4);
    std::set<Edge> uniq;
    for (const auto& e : sa) uniq.insert(e.canonical());
    CHECK(std::vector<Edge>(uniq.begin(), uniq.end()) ==
          std::vector<Edge>(g.edges().begin(), g.edges().end()));

    a.rewind();
    std::vector<Edge> again;
    while (auto e = a.next()) again.push_back(*e);
    CHECK(again == sa);
    CHECK(a.passes() == 2);
  }
}

TEST_CASE("shuffle order is uniform over the 4! kite orders") {
  const Graph g = fixture::kite();
  std::map<std::vector<Edge>, int> freq;
  const int trials = 1000;
  for (int seed = 1; seed <= trials; ++seed) {
    auto s = EdgeStream::permuted(g, static_cast<std::uint64_t>(seed));
    freq[std::vector<Edge>(s.order().begin(), s.order().end())]++;
  }
  CHECK(freq.size() == 24);
  const double p = 1.0 / 24.0;
  const double sigma = std::sqrt(trials * p * (1 - p));
  for (const auto& [order, count] : freq) {
    CHECK(std::abs(count - trials * p) <= 3 * sigma);
  }
}

TEST_CASE("live streams cannot rewind") {
  int left = 2;
  auto s = EdgeStream::live([&]() -> std::optional<Edge> {
    if (left-- > 0) return Edge{left, left + 10};
    return std::nullopt;
  });
  CHECK(!s.replayable());
  CHECK(s.next());
  CHECK(s.next());
  CHECK(!s.next());
  CHECK(s.position() == 2);
  CHECK_THROWS_AS(s.rewind(), UnsupportedError);
}

TEST_CASE("empty edge sets cannot be streamed") {
  CHECK_THROWS_AS(EdgeStream::permuted(std::vector<Edge>{}, 1), EmptyGraphError);
}

TEST_CASE("induced_subgraph examples") {
  const Graph g = fixture::kite();
  const std::vector<NodeId> tri = {1, 2, 3};
  const Graph t = induced_subgraph(g, tri);
  CHECK(t.num_nodes() == 3);
  CHECK(t.num_edges() == 3);
  const std::vector<NodeId> four = {4};
  const Graph one = induced_subgraph(g, four);
  CHECK(one.num_nodes() == 1);
  CHECK(one.num_edges() == 0);
  const std::vector<NodeId> all(g.node_ids().begin(), g.node_ids().end());
  CHECK(induced_subgraph(g, all) == g);
  const std::vector<NodeId> bad = {1, 99};
  CHECK_THROWS_AS(induced_subgraph(g, bad), UnknownNodeError);
}

TEST_CASE("induced_subgraph matches a pair scan on random subsets") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = fixture::random_graph(150, 0.06, seed);
    Rng rng(seed + 100);
    std::vector<NodeId> subset;
    for (NodeId id : g.node_ids())
      if (rng.uniform01() < 0.4) subset.push_back(id);
    const Graph s = induced_subgraph(g, subset);
    CHECK(s.num_nodes() == subset.size());
    CHECK(oracle::totally_induced(g, s));
  }
}

TEST_CASE("label CSV with and without header") {
  const auto a = temp_file("labels_h.csv", "node_id,label\n1,A\n2,B\n");
  const auto la = load_labels(a);
  CHECK(la.size() == 2);
  CHECK(la.at(2) == "B");
  const auto b = temp_file("labels.csv", "1,A\n2,B\n3,A\n");
  CHECK(load_labels(b).size() == 3);
  const auto c = temp_file("labels_bad.csv", "1,A\nx,B\n");
  CHECK_THROWS_AS(load_labels(c), ParseError);
}

TEST_CASE("sample sidecar restores isolated nodes") {
  const std::vector<Edge> e = {{1, 2}};
  const std::vector<NodeId> extra = {9};
  SampledSubgraph s{Graph::from_edges(e, extra), {}};
  s.meta.method = "ns";
  const auto p = std::filesystem::temp_directory_path() / "gsample_tests" / "s.txt";
  std::filesystem::create_directories(p.parent_path());
  write_sample(s, p);
  CHECK(std::filesystem::exists(metadata_path_for(p)));
  const Graph back = load_graph_with_sidecar(p);
  CHECK(back == s.graph);
}
