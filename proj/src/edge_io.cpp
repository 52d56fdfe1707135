#include "gsample/edge_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <unordered_set>

#include "gsample/error.hpp"

namespace gsample {
namespace {

constexpr std::string_view kSpace = " \t\r\v\f";

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(kSpace);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(kSpace);
  return s.substr(b, e - b + 1);
}

bool next_token(std::string_view& rest, std::string_view& token) {
  const auto b = rest.find_first_not_of(kSpace);
  if (b == std::string_view::npos) return false;
  rest.remove_prefix(b);
  const auto e = rest.find_first_of(kSpace);
  token = rest.substr(0, e);
  rest.remove_prefix(e == std::string_view::npos ? rest.size() : e);
  return true;
}

bool parse_id(std::string_view token, NodeId& out) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

}  // namespace

std::vector<Edge> parse_edge_list(std::istream& in, const LoadOptions& options) {
  std::vector<Edge> edges;
  std::unordered_set<Edge, EdgeHasher> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view rest = trim(line);
    if (rest.empty() || rest.front() == '#') continue;
    std::string_view a, b;
    NodeId u = 0, v = 0;
    if (!next_token(rest, a) || !next_token(rest, b) || !parse_id(a, u) ||
        !parse_id(b, v)) {
      throw ParseError("malformed edge at line " + std::to_string(lineno) +
                           ": '" + line + "'",
                       lineno);
    }
    if (u == v) {
      if (!options.skip_self_loops) {
        throw ParseError("self-loop at line " + std::to_string(lineno), lineno);
      }
      continue;
    }
    const Edge e = Edge{u, v}.canonical();
    if (!options.dedupe) {
      if (!seen.insert(e).second) {
        throw ParseError("duplicate edge at line " + std::to_string(lineno),
                         lineno);
      }
    }
    edges.push_back(e);
  }
  return edges;
}

Graph load_edge_list(const std::filesystem::path& path,
                     const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open edge list " + path.string());
  const auto edges = parse_edge_list(in, options);
  if (edges.empty()) {
    throw EmptyGraphError("edge list " + path.string() + " contains no edges");
  }
  return Graph::from_edges(edges);
}

void write_edge_list(std::ostream& out, std::span<const Edge> edges) {
  for (const Edge& e : edges) out << e.u << '\t' << e.v << '\n';
}

void write_edge_list(const std::filesystem::path& path,
                     std::span<const Edge> edges) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  write_edge_list(out, edges);
  if (!out) throw IoError("write failed for " + path.string());
}

std::unordered_map<NodeId, std::string> load_labels(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open label file " + path.string());
  std::unordered_map<NodeId, std::string> labels;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view row = trim(line);
    if (row.empty() || row.front() == '#') continue;
    const auto comma = row.find(',');
    NodeId id = 0;
    if (comma == std::string_view::npos) {
      throw ParseError("expected node_id,label at line " + std::to_string(lineno),
                       lineno);
    }
    const auto id_field = trim(row.substr(0, comma));
    const auto label = trim(row.substr(comma + 1));
    if (!parse_id(id_field, id)) {
      if (labels.empty() && lineno == 1) continue;  // header
      throw ParseError("bad node id at line " + std::to_string(lineno), lineno);
    }
    if (label.empty()) {
      throw ParseError("empty label at line " + std::to_string(lineno), lineno);
    }
    labels[id] = std::string(label);
  }
  return labels;
}

}  // namespace gsample
