#pragma once

// Reference implementations used only by the tests. They share no code with
// the library beyond the plain data types.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "kclub/cnf.hpp"
#include "kclub/graph.hpp"

namespace testsupport {

using kclub::Edge;
using kclub::Graph;
using kclub::Node;
using kclub::NodeSet;

// ---- small graphs, nodes 0..n-1 --------------------------------------------

inline Graph make_graph(std::size_t n, std::vector<Edge> edges) {
  return Graph(n, edges);
}

inline Graph cycle(std::size_t n) {
  std::vector<Edge> e;
  for (Node i = 0; i < n; ++i)
    e.emplace_back(i, static_cast<Node>((i + 1) % n));
  return Graph(n, e);
}

inline Graph path(std::size_t n) {
  std::vector<Edge> e;
  for (Node i = 0; i + 1 < n; ++i)
    e.emplace_back(i, i + 1);
  return Graph(n, e);
}

inline Graph complete(std::size_t n) {
  std::vector<Edge> e;
  for (Node i = 0; i < n; ++i)
    for (Node j = i + 1; j < n; ++j)
      e.emplace_back(i, j);
  return Graph(n, e);
}

inline Graph star(std::size_t leaves) {
  std::vector<Edge> e;
  for (Node i = 1; i <= leaves; ++i)
    e.emplace_back(0, i);
  return Graph(leaves + 1, e);
}

// Each pair independently with probability p.
inline Graph bernoulli_graph(std::mt19937_64 &rng, std::size_t n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> e;
  for (Node i = 0; i < n; ++i)
    for (Node j = i + 1; j < n; ++j)
      if (coin(rng))
        e.emplace_back(i, j);
  return Graph(n, e);
}

// ---- distances by Floyd-Warshall ---------------------------------------------

inline constexpr int kInf = 1 << 20;

// All-pairs distances of the subgraph induced by `members` (indices into
// `members`).
inline std::vector<std::vector<int>> induced_distances(const Graph &g,
                                                       std::span<const Node> members) {
  const std::size_t s = members.size();
  std::vector<std::vector<int>> d(s, std::vector<int>(s, kInf));
  for (std::size_t a = 0; a < s; ++a) {
    d[a][a] = 0;
    for (std::size_t b = 0; b < s; ++b)
      if (a != b && g.adjacent(members[a], members[b]))
        d[a][b] = 1;
  }
  for (std::size_t via = 0; via < s; ++via)
    for (std::size_t a = 0; a < s; ++a)
      for (std::size_t b = 0; b < s; ++b)
        d[a][b] = std::min(d[a][b], d[a][via] + d[via][b]);
  return d;
}

inline bool floyd_is_k_club(const Graph &g, std::span<const Node> members,
                            int k) {
  for (const auto &row : induced_distances(g, members))
    for (int x : row)
      if (x > k)
        return false;
  return true;
}

inline std::optional<int> floyd_diameter(const Graph &g,
                                         std::span<const Node> members) {
  int best = 0;
  for (const auto &row : induced_distances(g, members))
    for (int x : row) {
      if (x >= kInf)
        return std::nullopt;
      best = std::max(best, x);
    }
  return best;
}

// Largest k-club by plain enumeration of all subsets, checked with
// Floyd-Warshall.
inline std::size_t naive_k_club_number(const Graph &g, int k) {
  const std::size_t n = g.num_nodes();
  std::size_t best = 0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    const auto size = static_cast<std::size_t>(__builtin_popcount(mask));
    if (size <= best)
      continue;
    std::vector<Node> members;
    for (Node v = 0; v < n; ++v)
      if (mask >> v & 1)
        members.push_back(v);
    if (floyd_is_k_club(g, members, k))
      best = size;
  }
  return best;
}

// Largest set whose members are pairwise within distance k in g (paths may
// leave the set). Differs from the k-club number exactly when a witness
// needs outside nodes.
inline std::size_t naive_k_clique_number(const Graph &g, int k) {
  const std::size_t n = g.num_nodes();
  std::vector<Node> everyone(n);
  for (Node v = 0; v < n; ++v)
    everyone[v] = v;
  const auto d = induced_distances(g, everyone);
  std::size_t best = 0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    const auto size = static_cast<std::size_t>(__builtin_popcount(mask));
    if (size <= best)
      continue;
    bool ok = true;
    for (Node a = 0; a < n && ok; ++a)
      for (Node b = a + 1; b < n && ok; ++b)
        if ((mask >> a & 1) && (mask >> b & 1) && d[a][b] > k)
          ok = false;
    if (ok)
      best = size;
  }
  return best;
}

// ---- MAX-SAT by exhaustive enumeration --------------------------------------

struct BitClause {
  std::uint32_t pos = 0;
  std::uint32_t neg = 0;
};

// Optimum soft count over all assignments, nullopt when the hard part is
// unsatisfiable. Needs num_vars <= 24.
inline std::optional<std::size_t> enumerate_optimum(const kclub::WcnfFormula &f) {
  std::vector<BitClause> hard;
  for (const auto &c : f.hard()) {
    BitClause b;
    for (auto l : c)
      (l.negative() ? b.neg : b.pos) |= 1u << (l.var() - 1);
    hard.push_back(b);
  }
  std::uint32_t soft_mask = 0;
  for (auto v : f.soft())
    soft_mask |= 1u << (v - 1);
  std::optional<std::size_t> best;
  const std::uint64_t total = std::uint64_t{1} << f.num_vars();
  for (std::uint64_t a64 = 0; a64 < total; ++a64) {
    const auto a = static_cast<std::uint32_t>(a64);
    const auto score = static_cast<std::size_t>(__builtin_popcount(a & soft_mask));
    if (best && score <= *best)
      continue;
    bool ok = true;
    for (const auto &c : hard)
      if (!((a & c.pos) | (~a & c.neg))) {
        ok = false;
        break;
      }
    if (ok)
      best = score;
  }
  return best;
}

// Random partial MAX-SAT instance with 1..max_vars variables.
inline kclub::WcnfFormula random_wcnf(std::mt19937_64 &rng,
                                      std::size_t max_vars) {
  std::uniform_int_distribution<std::size_t> nv(1, max_vars);
  const std::size_t n = nv(rng);
  kclub::WcnfFormula f(n);
  std::bernoulli_distribution half(0.5);
  for (kclub::Var v = 1; v <= n; ++v)
    if (half(rng) || half(rng))
      f.add_soft(v);
  std::uniform_int_distribution<std::size_t> nc(0, 3 * n);
  std::uniform_int_distribution<std::size_t> width(1, std::min<std::size_t>(4, n));
  std::uniform_int_distribution<kclub::Var> var(1, static_cast<kclub::Var>(n));
  std::bernoulli_distribution negative(0.65);
  const std::size_t clauses = nc(rng);
  for (std::size_t c = 0; c < clauses; ++c) {
    const std::size_t w = width(rng);
    std::vector<kclub::Var> vars;
    while (vars.size() < w) {
      const auto v = var(rng);
      if (std::find(vars.begin(), vars.end(), v) == vars.end())
        vars.push_back(v);
    }
    std::vector<kclub::Lit> lits;
    for (auto v : vars)
      lits.push_back(negative(rng) ? kclub::Lit::neg(v) : kclub::Lit::pos(v));
    f.add_hard(kclub::Clause(std::move(lits)));
  }
  return f;
}

} // namespace testsupport
