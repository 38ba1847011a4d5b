#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dcc/clustering.hpp"
#include "dcc/graph.hpp"

namespace dcc {

enum class GraphFormat { edge_list, metis };

std::optional<GraphFormat> parse_graph_format(std::string_view name);

/// Malformed input file; carries the 1-based line number (0 if unknown).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Edge list: one "u v" pair of 0-based ids per line, '%' starts a comment.
/// The first data line is read as an "n m" header when m equals the number of
/// remaining data lines and every id on them is below n; otherwise n is one
/// more than the largest id.
Graph read_edge_list(std::istream& in);

/// METIS adjacency format (1-based). Edge weights are multiplicities, so any
/// weight other than 1 makes the graph non-simple and is rejected; vertex
/// weights must be 1.
Graph read_metis(std::istream& in);

Graph load_graph(const std::filesystem::path& path, GraphFormat format);

/// Writes an "n m" header followed by every edge once, u < v.
void write_edge_list(std::ostream& out, const Graph& g);
void save_edge_list(const std::filesystem::path& path, const Graph& g);

/// One cluster label per line, line i for vertex i.
std::vector<std::uint64_t> read_labels(std::istream& in);
std::vector<std::uint64_t> load_labels(const std::filesystem::path& path);

/// Writes the clustering with labels normalized to first appearance order.
void write_clustering(std::ostream& out, const Clustering& c);
void save_clustering(const std::filesystem::path& path, const Clustering& c);

}  // namespace dcc
