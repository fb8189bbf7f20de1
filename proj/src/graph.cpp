#include "kclub/graph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace kclub {

Graph::Graph(std::size_t n) : adj_(n) {}

Graph::Graph(std::size_t n, std::span<const Edge> edges) : adj_(n) {
  edges_.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u >= n || v >= n)
      throw std::out_of_range("edge endpoint out of range: " +
                              std::to_string(std::max(u, v)));
    if (u == v)
      throw std::invalid_argument("self-loop at node " + std::to_string(u));
    edges_.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  for (auto [u, v] : edges_) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto &list : adj_)
    std::sort(list.begin(), list.end());
}

bool Graph::adjacent(Node u, Node v) const {
  const auto &a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
  Node other = adj_[u].size() <= adj_[v].size() ? v : u;
  return std::binary_search(a.begin(), a.end(), other);
}

NodeSet::NodeSet(std::vector<Node> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()),
                 members_.end());
}

NodeSet NodeSet::all(std::size_t n) {
  std::vector<Node> v(n);
  std::iota(v.begin(), v.end(), Node{0});
  return NodeSet(std::move(v));
}

bool NodeSet::contains(Node v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

namespace {

void check_members(const Graph &g, const NodeSet &s) {
  if (s.empty())
    throw std::invalid_argument("node set is empty");
  if (s.members().back() >= g.num_nodes())
    throw std::out_of_range("node " + std::to_string(s.members().back()) +
                            " not in graph");
}

// BFS over the nodes flagged in `inside`; returns the eccentricity of
// `source` within that node set, or kUnreachable if some flagged node is
// not reached. Stops early once the frontier passes `cap`.
int restricted_eccentricity(const Graph &g, const std::vector<char> &inside,
                            std::size_t inside_count, Node source, int cap,
                            std::vector<int> &dist, std::vector<Node> &queue) {
  std::fill(dist.begin(), dist.end(), kUnreachable);
  queue.clear();
  queue.push_back(source);
  dist[source] = 0;
  int ecc = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Node u = queue[head];
    if (dist[u] >= cap)
      break;
    for (Node w : g.neighbors(u)) {
      if (!inside[w] || dist[w] != kUnreachable)
        continue;
      dist[w] = dist[u] + 1;
      ecc = dist[w];
      queue.push_back(w);
    }
  }
  return queue.size() == inside_count ? ecc : kUnreachable;
}

} // namespace

std::vector<int> bfs_distances(const Graph &g, Node source) {
  if (source >= g.num_nodes())
    throw std::out_of_range("source " + std::to_string(source) +
                            " out of range");
  std::vector<int> dist(g.num_nodes(), kUnreachable);
  std::vector<Node> queue{source};
  dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Node u = queue[head];
    for (Node w : g.neighbors(u)) {
      if (dist[w] == kUnreachable) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

std::optional<int> diameter(const Graph &g) {
  if (g.num_nodes() == 0)
    throw std::invalid_argument("diameter of an empty graph");
  return induced_diameter(g, NodeSet::all(g.num_nodes()));
}

InducedSubgraph induced_subgraph(const Graph &g, const NodeSet &s) {
  check_members(g, s);
  std::vector<Node> relabel(g.num_nodes(), Node(-1));
  InducedSubgraph out;
  out.original.assign(s.begin(), s.end());
  for (std::size_t i = 0; i < out.original.size(); ++i)
    relabel[out.original[i]] = static_cast<Node>(i);
  std::vector<Edge> edges;
  for (Node u : s)
    for (Node w : g.neighbors(u))
      if (u < w && relabel[w] != Node(-1))
        edges.emplace_back(relabel[u], relabel[w]);
  out.graph = Graph(s.size(), edges);
  return out;
}

bool is_k_club(const Graph &g, const NodeSet &s, int k) {
  if (k < 1)
    throw std::invalid_argument("k must be positive");
  check_members(g, s);
  std::vector<char> inside(g.num_nodes(), 0);
  for (Node v : s)
    inside[v] = 1;
  std::vector<int> dist(g.num_nodes());
  std::vector<Node> queue;
  queue.reserve(s.size());
  for (Node v : s) {
    // With the cap at k, a complete BFS means every member is within k.
    if (restricted_eccentricity(g, inside, s.size(), v, k, dist, queue) ==
        kUnreachable)
      return false;
  }
  return true;
}

std::optional<int> induced_diameter(const Graph &g, const NodeSet &s) {
  check_members(g, s);
  std::vector<char> inside(g.num_nodes(), 0);
  for (Node v : s)
    inside[v] = 1;
  std::vector<int> dist(g.num_nodes());
  std::vector<Node> queue;
  queue.reserve(s.size());
  int best = 0;
  const int no_cap = static_cast<int>(g.num_nodes()) + 1;
  for (Node v : s) {
    int ecc =
        restricted_eccentricity(g, inside, s.size(), v, no_cap, dist, queue);
    if (ecc == kUnreachable)
      return std::nullopt;
    best = std::max(best, ecc);
  }
  return best;
}

double density(const Graph &g) {
  const auto n = static_cast<double>(g.num_nodes());
  if (g.num_nodes() < 2)
    throw std::invalid_argument("density needs at least two nodes");
  return 2.0 * static_cast<double>(g.num_edges()) / (n * (n - 1.0));
}

double degree_variance(const Graph &g) {
  const std::size_t n = g.num_nodes();
  if (n == 0)
    return 0.0;
  double mean = 2.0 * static_cast<double>(g.num_edges()) / n;
  double acc = 0.0;
  for (Node v = 0; v < n; ++v) {
    double d = static_cast<double>(g.degree(v)) - mean;
    acc += d * d;
  }
  return acc / n;
}

bool is_connected(const Graph &g) {
  if (g.num_nodes() == 0)
    return true;
  auto dist = bfs_distances(g, 0);
  return std::none_of(dist.begin(), dist.end(),
                      [](int d) { return d == kUnreachable; });
}

} // namespace kclub
