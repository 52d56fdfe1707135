#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "gsample/graph.hpp"

namespace gsample {

struct LoadOptions {
  /// Drop self-loops; when false a self-loop is a parse error.
  bool skip_self_loops = true;
  /// Merge duplicate and reverse-duplicate edges; when false they are a
  /// parse error.
  bool dedupe = true;
};

/// Reads SNAP-style edge lines: two whitespace-separated integer ids per
/// line, extra columns ignored, '#' comment lines and blank lines skipped.
/// Throws ParseError naming the offending line.
std::vector<Edge> parse_edge_list(std::istream& in, const LoadOptions& options = {});

/// Throws IoError, ParseError, or EmptyGraphError.
Graph load_edge_list(const std::filesystem::path& path,
                     const LoadOptions& options = {});

void write_edge_list(std::ostream& out, std::span<const Edge> edges);
void write_edge_list(const std::filesystem::path& path,
                     std::span<const Edge> edges);

/// `node_id,label` rows; a first row whose id column is not an integer is
/// treated as a header.
std::unordered_map<NodeId, std::string> load_labels(
    const std::filesystem::path& path);

}  // namespace gsample
