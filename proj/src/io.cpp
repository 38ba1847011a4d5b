#include "dcc/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace dcc {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::uint64_t parse_uint(std::string_view token, std::size_t line) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(line, "expected a non-negative integer, got '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
      line_(line) {}

std::optional<GraphFormat> parse_graph_format(std::string_view name) {
  if (name == "edge-list" || name == "edges") return GraphFormat::edge_list;
  if (name == "metis") return GraphFormat::metis;
  return std::nullopt;
}

Graph read_edge_list(std::istream& in) {
  struct Row {
    std::size_t line;
    std::uint64_t a, b;
  };
  std::vector<Row> rows;
  std::string text;
  std::size_t number = 0;
  while (std::getline(in, text)) {
    ++number;
    auto body = trim(text);
    if (body.empty() || body.front() == '%') continue;
    const auto tokens = split(body);
    if (tokens.size() != 2) {
      throw ParseError(number, "expected two vertex ids, got " + std::to_string(tokens.size()) + " fields");
    }
    rows.push_back({number, parse_uint(tokens[0], number), parse_uint(tokens[1], number)});
  }

  std::size_t first_edge = 0;
  std::uint64_t n = 0;
  if (!rows.empty()) {
    std::uint64_t max_rest = 0;
    bool any_rest = false;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      max_rest = std::max({max_rest, rows[i].a, rows[i].b});
      any_rest = true;
    }
    const bool header = rows[0].b == rows.size() - 1 && (!any_rest || max_rest < rows[0].a);
    if (header) {
      n = rows[0].a;
      first_edge = 1;
    } else {
      for (const auto& r : rows) n = std::max({n, r.a + 1, r.b + 1});
    }
  }

  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(rows.size());
  std::unordered_map<std::uint64_t, std::size_t> seen;
  for (std::size_t i = first_edge; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.a >= n || r.b >= n) {
      throw ParseError(r.line, "vertex index out of range (n = " + std::to_string(n) + ")");
    }
    if (r.a == r.b) throw ParseError(r.line, "self-edge at vertex " + std::to_string(r.a));
    const auto u = static_cast<Vertex>(std::min(r.a, r.b));
    const auto v = static_cast<Vertex>(std::max(r.a, r.b));
    const auto [it, inserted] = seen.try_emplace(std::uint64_t{u} * n + v, r.line);
    if (!inserted) {
      throw ParseError(r.line, "duplicate edge {" + std::to_string(u) + ", " + std::to_string(v) +
                                   "} (first seen on line " + std::to_string(it->second) + ")");
    }
    edges.emplace_back(u, v);
  }
  return Graph::from_edges(n, edges);
}

Graph read_metis(std::istream& in) {
  std::string text;
  std::size_t number = 0;
  auto next_line = [&](std::string& out) -> bool {
    while (std::getline(in, out)) {
      ++number;
      auto body = trim(out);
      if (!body.empty() && body.front() == '%') continue;
      return true;
    }
    return false;
  };

  // header: skip leading blank lines
  std::vector<std::string_view> header;
  while (header.empty()) {
    if (!next_line(text)) throw ParseError(number, "missing METIS header");
    header = split(trim(text));
  }
  if (header.size() < 2 || header.size() > 4) throw ParseError(number, "malformed METIS header");
  const std::uint64_t n = parse_uint(header[0], number);
  const std::uint64_t m = parse_uint(header[1], number);
  std::string fmt = header.size() >= 3 ? std::string(header[2]) : "0";
  if (fmt.size() > 3 || fmt.find_first_not_of("01") != std::string::npos) {
    throw ParseError(number, "unsupported METIS fmt '" + fmt + "'");
  }
  fmt.insert(0, 3 - fmt.size(), '0');
  if (fmt[0] == '1') throw ParseError(number, "METIS vertex sizes are not supported");
  const bool vertex_weights = fmt[1] == '1';
  const bool edge_weights = fmt[2] == '1';
  const std::uint64_t ncon = header.size() == 4 ? parse_uint(header[3], number) : (vertex_weights ? 1 : 0);
  if (!vertex_weights && ncon != 0 && header.size() == 4) {
    throw ParseError(number, "ncon given without vertex weights");
  }

  std::vector<std::pair<Vertex, Vertex>> directed;
  for (std::uint64_t v = 0; v < n; ++v) {
    if (!next_line(text)) throw ParseError(number, "expected " + std::to_string(n) + " vertex lines");
    const auto tokens = split(trim(text));
    std::size_t pos = 0;
    for (std::uint64_t c = 0; c < ncon; ++c, ++pos) {
      if (pos >= tokens.size()) throw ParseError(number, "missing vertex weight");
      if (parse_uint(tokens[pos], number) != 1) {
        throw ParseError(number, "vertex weights other than 1 are not supported");
      }
    }
    while (pos < tokens.size()) {
      const std::uint64_t u = parse_uint(tokens[pos++], number);
      if (u == 0 || u > n) throw ParseError(number, "vertex index out of range");
      if (edge_weights) {
        if (pos >= tokens.size()) throw ParseError(number, "missing edge weight");
        const auto w = tokens[pos++];
        if (w.find_first_of(".eE") != std::string_view::npos) {
          throw ParseError(number, "fractional edge weight '" + std::string(w) + "'");
        }
        const std::uint64_t weight = parse_uint(w, number);
        if (weight != 1) {
          throw ParseError(number, "edge weight " + std::to_string(weight) +
                                       " would be a multi-edge; input graphs must be simple");
        }
      }
      if (u - 1 == v) throw ParseError(number, "self-edge at vertex " + std::to_string(v + 1));
      directed.emplace_back(static_cast<Vertex>(v), static_cast<Vertex>(u - 1));
    }
  }
  while (std::getline(in, text)) {
    ++number;
    auto body = trim(text);
    if (!body.empty() && body.front() != '%') throw ParseError(number, "trailing data after vertex lines");
  }

  std::sort(directed.begin(), directed.end());
  if (std::adjacent_find(directed.begin(), directed.end()) != directed.end()) {
    throw ParseError(0, "duplicate neighbor entry; input graphs must be simple");
  }
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (const auto& [u, v] : directed) {
    if (!std::binary_search(directed.begin(), directed.end(), std::pair{v, u})) {
      throw ParseError(0, "edge {" + std::to_string(u + 1) + ", " + std::to_string(v + 1) +
                              "} is listed at only one endpoint");
    }
    if (u < v) edges.emplace_back(u, v);
  }
  if (edges.size() != m) {
    throw ParseError(0, "header declares " + std::to_string(m) + " edges, found " +
                            std::to_string(edges.size()));
  }
  return Graph::from_edges(n, edges);
}

Graph load_graph(const std::filesystem::path& path, GraphFormat format) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file " + path.string());
  return format == GraphFormat::metis ? read_metis(in) : read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  const auto edges = g.edge_list();
  out << g.vertex_count() << ' ' << edges.size() << '\n';
  for (const auto& [u, v] : edges) out << u << ' ' << v << '\n';
}

void save_edge_list(const std::filesystem::path& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_edge_list(out, g);
}

std::vector<std::uint64_t> read_labels(std::istream& in) {
  std::vector<std::uint64_t> labels;
  std::string text;
  std::size_t number = 0;
  std::size_t blank_run = 0;
  while (std::getline(in, text)) {
    ++number;
    const auto body = trim(text);
    if (body.empty()) {
      ++blank_run;
      continue;
    }
    if (blank_run > 0) throw ParseError(number, "blank line inside clustering file");
    labels.push_back(parse_uint(body, number));
  }
  return labels;
}

std::vector<std::uint64_t> load_labels(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open clustering file " + path.string());
  return read_labels(in);
}

void write_clustering(std::ostream& out, const Clustering& c) {
  for (ClusterId label : c.normalized_labels()) out << label << '\n';
}

void save_clustering(const std::filesystem::path& path, const Clustering& c) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_clustering(out, c);
}

}  // namespace dcc
