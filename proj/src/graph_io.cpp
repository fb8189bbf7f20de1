#include "kclub/graph_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "kclub/error.hpp"

namespace kclub {

GraphFormat parse_format_name(std::string_view name) {
  if (name == "edge" || name == "edge-list" || name == "edgelist")
    return GraphFormat::EdgeList;
  if (name == "col" || name == "dimacs" || name == "dimacs-col")
    return GraphFormat::DimacsCol;
  if (name == "metis")
    return GraphFormat::Metis;
  throw std::invalid_argument("unknown graph format '" + std::string(name) +
                              "'");
}

std::string_view format_name(GraphFormat f) {
  switch (f) {
  case GraphFormat::EdgeList:
    return "edge";
  case GraphFormat::DimacsCol:
    return "col";
  case GraphFormat::Metis:
    return "metis";
  }
  return "edge";
}

GraphFormat format_from_extension(const std::filesystem::path &p) {
  auto ext = p.extension().string();
  if (ext == ".graph" || ext == ".metis")
    return GraphFormat::Metis;
  if (ext == ".col" || ext == ".dimacs")
    return GraphFormat::DimacsCol;
  return GraphFormat::EdgeList;
}

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) {
      if (start < text.size())
        lines.push_back(text.substr(start));
      break;
    }
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r')
      line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
}

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i]))
      ++i;
    std::size_t j = i;
    while (j < line.size() && !is_space(line[j]))
      ++j;
    if (j > i)
      out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::uint64_t to_uint(std::string_view tok, std::size_t line) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size())
    throw ParseError(line, "expected a non-negative integer, got '" +
                               std::string(tok) + "'");
  return v;
}

// Collects 1-based edges, drops self-loops and duplicates with counts.
class EdgeCollector {
public:
  void add(std::uint64_t u, std::uint64_t v, std::size_t line,
           std::uint64_t n_limit) {
    if (u == 0 || v == 0)
      throw ParseError(line, "node labels are 1-based");
    if (u > n_limit || v > n_limit)
      throw ParseError(line, "node " + std::to_string(std::max(u, v)) +
                                 " exceeds declared node count " +
                                 std::to_string(n_limit));
    max_label_ = std::max({max_label_, u, v});
    if (u == v) {
      ++self_loops_;
      return;
    }
    edges_.emplace_back(static_cast<Node>(std::min(u, v) - 1),
                        static_cast<Node>(std::max(u, v) - 1));
  }

  std::uint64_t max_label() const { return max_label_; }

  // Sorts and deduplicates; raw_count() keeps the pre-dedup size.
  std::vector<Edge> unique_edges() {
    std::sort(edges_.begin(), edges_.end());
    raw_count_ = edges_.size();
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    return edges_;
  }

  std::size_t raw_count() const { return raw_count_; }
  std::size_t self_loops() const { return self_loops_; }

private:
  std::vector<Edge> edges_;
  std::uint64_t max_label_ = 0;
  std::size_t self_loops_ = 0;
  std::size_t raw_count_ = 0;
};

ParsedGraph parse_edge_list(const std::vector<std::string_view> &lines) {
  std::optional<std::uint64_t> declared;
  EdgeCollector edges;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    auto tok = tokens(lines[i]);
    if (tok.empty())
      continue;
    if (tok[0].front() == '#' || tok[0].front() == '%') {
      // "# nodes <n>" pins the node count (isolated trailing nodes).
      if (tok.size() >= 3 && tok[0] == "#" && tok[1] == "nodes") {
        if (declared)
          throw ParseError(lineno, "node count declared twice");
        if (edges.max_label() > 0)
          throw ParseError(lineno, "node count must precede the edges");
        declared = to_uint(tok[2], lineno);
      }
      continue;
    }
    if (tok.size() != 2)
      throw ParseError(lineno, "expected 'u v'");
    edges.add(to_uint(tok[0], lineno), to_uint(tok[1], lineno), lineno,
              declared.value_or(std::uint64_t(Node(-1))));
  }
  auto unique = edges.unique_edges();
  const auto n = declared.value_or(edges.max_label());
  ParsedGraph out{Graph(static_cast<std::size_t>(n), unique),
                  edges.self_loops(), edges.raw_count() - unique.size()};
  return out;
}

ParsedGraph parse_dimacs_col(const std::vector<std::string_view> &lines) {
  std::optional<std::uint64_t> n;
  EdgeCollector edges;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    auto tok = tokens(lines[i]);
    if (tok.empty() || tok[0] == "c")
      continue;
    if (tok[0] == "p") {
      if (n)
        throw ParseError(lineno, "duplicate problem line");
      if (tok.size() != 4 || (tok[1] != "edge" && tok[1] != "col"))
        throw ParseError(lineno, "expected 'p edge <n> <m>'");
      n = to_uint(tok[2], lineno);
      to_uint(tok[3], lineno);
      continue;
    }
    if (tok[0] == "e") {
      if (!n)
        throw ParseError(lineno, "edge line before problem line");
      if (tok.size() != 3)
        throw ParseError(lineno, "expected 'e <u> <v>'");
      edges.add(to_uint(tok[1], lineno), to_uint(tok[2], lineno), lineno, *n);
      continue;
    }
    throw ParseError(lineno, "unexpected line type '" + std::string(tok[0]) +
                                 "'");
  }
  if (!n)
    throw ParseError(lines.size(), "missing problem line");
  auto unique = edges.unique_edges();
  return {Graph(static_cast<std::size_t>(*n), unique), edges.self_loops(),
          edges.raw_count() - unique.size()};
}

ParsedGraph parse_metis(const std::vector<std::string_view> &lines) {
  std::size_t i = 0;
  auto is_comment = [](std::string_view line) {
    auto tok = tokens(line);
    return !tok.empty() && tok[0].front() == '%';
  };
  while (i < lines.size() &&
         (tokens(lines[i]).empty() || is_comment(lines[i])))
    ++i;
  if (i == lines.size())
    throw ParseError(lines.size(), "missing METIS header");
  const std::size_t header_line = i + 1;
  auto header = tokens(lines[i]);
  if (header.size() < 2 || header.size() > 4)
    throw ParseError(header_line, "expected '<n> <m> [fmt [ncon]]'");
  const auto n = to_uint(header[0], header_line);
  const auto m = to_uint(header[1], header_line);
  if (header.size() >= 3 &&
      header[2].find_first_not_of('0') != std::string_view::npos)
    throw ParseError(header_line, "weighted METIS graphs are not supported");
  ++i;

  EdgeCollector edges;
  std::uint64_t node = 0;
  for (; i < lines.size() && node < n; ++i) {
    if (is_comment(lines[i]))
      continue;
    ++node;
    for (auto tok : tokens(lines[i]))
      edges.add(node, to_uint(tok, i + 1), i + 1, n);
  }
  if (node < n)
    throw ParseError(lines.size(), "expected " + std::to_string(n) +
                                       " adjacency lines, found " +
                                       std::to_string(node));
  for (; i < lines.size(); ++i)
    if (!tokens(lines[i]).empty() && !is_comment(lines[i]))
      throw ParseError(i + 1, "data after the last adjacency line");

  auto unique = edges.unique_edges();
  if (unique.size() != m)
    throw ParseError(header_line,
                     "header declares " + std::to_string(m) +
                         " edges but adjacency lists give " +
                         std::to_string(unique.size()));
  // Every edge is listed from both ends; only extra copies are duplicates.
  const std::size_t expected_raw = 2 * unique.size();
  const std::size_t dups =
      edges.raw_count() > expected_raw ? edges.raw_count() - expected_raw : 0;
  return {Graph(static_cast<std::size_t>(n), unique), edges.self_loops(),
          dups};
}

} // namespace

ParsedGraph parse_graph(std::string_view text, GraphFormat format) {
  auto lines = split_lines(text);
  switch (format) {
  case GraphFormat::EdgeList:
    return parse_edge_list(lines);
  case GraphFormat::DimacsCol:
    return parse_dimacs_col(lines);
  case GraphFormat::Metis:
    return parse_metis(lines);
  }
  throw std::invalid_argument("unsupported format");
}

std::string write_graph(const Graph &g, GraphFormat format) {
  std::ostringstream out;
  switch (format) {
  case GraphFormat::EdgeList: {
    Node max_label = 0;
    for (auto [u, v] : g.edges())
      max_label = std::max(max_label, v + 1);
    if (max_label < g.num_nodes())
      out << "# nodes " << g.num_nodes() << '\n';
    for (auto [u, v] : g.edges())
      out << u + 1 << ' ' << v + 1 << '\n';
    break;
  }
  case GraphFormat::DimacsCol:
    out << "p edge " << g.num_nodes() << ' ' << g.num_edges() << '\n';
    for (auto [u, v] : g.edges())
      out << "e " << u + 1 << ' ' << v + 1 << '\n';
    break;
  case GraphFormat::Metis:
    out << g.num_nodes() << ' ' << g.num_edges() << '\n';
    for (Node v = 0; v < g.num_nodes(); ++v) {
      bool first = true;
      for (Node w : g.neighbors(v)) {
        out << (first ? "" : " ") << w + 1;
        first = false;
      }
      out << '\n';
    }
    break;
  }
  return out.str();
}

std::string read_text_file(const std::filesystem::path &path) {
  if (std::filesystem::is_directory(path))
    throw std::runtime_error(path.string() + " is a directory");
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::filesystem::path &path,
                     std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw std::runtime_error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out)
    throw std::runtime_error("write failed: " + path.string());
}

ParsedGraph read_graph_file(const std::filesystem::path &path,
                            GraphFormat format) {
  return parse_graph(read_text_file(path), format);
}

void write_graph_file(const std::filesystem::path &path, const Graph &g,
                      GraphFormat format) {
  write_text_file(path, write_graph(g, format));
}

} // namespace kclub
