#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "kclub/graph.hpp"

namespace kclub {

enum class GraphFormat { EdgeList, DimacsCol, Metis };

/// "edge", "col" or "metis" (the command-line spellings).
GraphFormat parse_format_name(std::string_view name);
std::string_view format_name(GraphFormat f);

/// Guess a format from a file extension: .graph/.metis -> metis,
/// .col/.dimacs -> col, anything else -> edge list.
GraphFormat format_from_extension(const std::filesystem::path &p);

struct ParsedGraph {
  Graph graph;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicate_edges_dropped = 0;
};

/// Parse a graph in one of the supported text formats.
///
/// edge list : "u v" per line (1-based). '#' and '%' start comments; a
///             "# nodes <n>" comment fixes the node count, otherwise it is
///             the largest label seen.
/// dimacs-col: 'c' comment lines, one "p edge <n> <m>", then "e <u> <v>".
/// metis     : "<n> <m> [fmt]" header, then n adjacency lines, '%'
///             comments. An empty adjacency line is an isolated node.
///
/// Throws ParseError carrying the 1-based line number.
ParsedGraph parse_graph(std::string_view text, GraphFormat format);

std::string write_graph(const Graph &g, GraphFormat format);

ParsedGraph read_graph_file(const std::filesystem::path &path,
                            GraphFormat format);
void write_graph_file(const std::filesystem::path &path, const Graph &g,
                      GraphFormat format);

std::string read_text_file(const std::filesystem::path &path);
void write_text_file(const std::filesystem::path &path, std::string_view text);

} // namespace kclub
