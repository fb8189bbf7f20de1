#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace kclub {

// Nodes are 0-based inside the library. File formats and the command line
// use 1-based labels; the conversion happens in graph_io and the tools.
using Node = std::uint32_t;
using Edge = std::pair<Node, Node>;

inline constexpr int kUnreachable = -1;

/// Simple undirected graph with sorted adjacency lists.
///
/// Immutable after construction. The constructor normalizes the edge list
/// (orientation, duplicates) but rejects self-loops and out-of-range
/// endpoints; lenient input handling lives in graph_io.
class Graph {
public:
  Graph() = default;
  explicit Graph(std::size_t n);
  Graph(std::size_t n, std::span<const Edge> edges);

  std::size_t num_nodes() const { return adj_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  std::span<const Node> neighbors(Node v) const { return adj_[v]; }
  std::size_t degree(Node v) const { return adj_[v].size(); }
  bool adjacent(Node u, Node v) const;

  /// Edges as (u, v) with u < v, sorted lexicographically.
  std::span<const Edge> edges() const { return edges_; }

  friend bool operator==(const Graph &, const Graph &) = default;

private:
  std::vector<std::vector<Node>> adj_;
  std::vector<Edge> edges_;
};

/// Sorted, duplicate-free subset of the nodes of some graph.
class NodeSet {
public:
  NodeSet() = default;
  NodeSet(std::vector<Node> members);
  NodeSet(std::initializer_list<Node> members)
      : NodeSet(std::vector<Node>(members)) {}

  static NodeSet all(std::size_t n);

  std::span<const Node> members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(Node v) const;

  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  friend bool operator==(const NodeSet &, const NodeSet &) = default;

private:
  std::vector<Node> members_;
};

struct InducedSubgraph {
  Graph graph;
  // original[v] is the node of the parent graph that became node v.
  std::vector<Node> original;
};

/// Distances from source; kUnreachable for nodes in other components.
std::vector<int> bfs_distances(const Graph &g, Node source);

/// Largest pairwise distance, or nullopt when g is disconnected.
std::optional<int> diameter(const Graph &g);

InducedSubgraph induced_subgraph(const Graph &g, const NodeSet &s);

/// True iff every pair of members is joined by a path of at most k edges
/// that stays inside s.
bool is_k_club(const Graph &g, const NodeSet &s, int k);

/// Diameter of G[s], nullopt when G[s] is disconnected.
std::optional<int> induced_diameter(const Graph &g, const NodeSet &s);

/// Edge density 2m / (n(n-1)).
double density(const Graph &g);

/// Population variance of the degree sequence.
double degree_variance(const Graph &g);

bool is_connected(const Graph &g);

} // namespace kclub
