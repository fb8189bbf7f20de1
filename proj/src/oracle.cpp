#include "kclub/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "kclub/error.hpp"

namespace kclub {

namespace {

using Mask = std::uint32_t;

std::vector<Mask> adjacency_masks(const Graph &g) {
  if (g.num_nodes() == 0)
    throw std::invalid_argument("oracle needs a nonempty graph");
  if (g.num_nodes() > kOracleMaxNodes)
    throw std::invalid_argument("oracle is limited to " +
                                std::to_string(kOracleMaxNodes) + " nodes");
  std::vector<Mask> adj(g.num_nodes(), 0);
  for (auto [u, v] : g.edges()) {
    adj[u] |= Mask{1} << v;
    adj[v] |= Mask{1} << u;
  }
  return adj;
}

// Every member reaches all of s within k steps without leaving s.
bool mask_is_k_club(const std::vector<Mask> &adj, Mask s, int k) {
  for (Mask rest = s; rest != 0; rest &= rest - 1) {
    const int v = std::countr_zero(rest);
    Mask seen = Mask{1} << v;
    Mask frontier = seen;
    for (int step = 0; step < k && seen != s && frontier != 0; ++step) {
      Mask next = 0;
      for (Mask f = frontier; f != 0; f &= f - 1)
        next |= adj[std::countr_zero(f)];
      next &= s & ~seen;
      seen |= next;
      frontier = next;
    }
    if (seen != s)
      return false;
  }
  return true;
}

bool mask_is_clique(const std::vector<Mask> &adj, Mask s) {
  for (Mask rest = s; rest != 0; rest &= rest - 1) {
    const int v = std::countr_zero(rest);
    if (((adj[v] | (Mask{1} << v)) & s) != s)
      return false;
  }
  return true;
}

NodeSet to_node_set(Mask s) {
  std::vector<Node> members;
  for (; s != 0; s &= s - 1)
    members.push_back(static_cast<Node>(std::countr_zero(s)));
  return NodeSet(std::move(members));
}

// Visits all size-r subsets of n bits (Gosper's hack) until pred holds.
template <class Pred>
std::optional<Mask> first_subset(std::size_t n, std::size_t r, Pred &&pred) {
  if (r == 0 || r > n)
    return std::nullopt;
  const std::uint64_t limit = std::uint64_t{1} << n;
  std::uint64_t s = (std::uint64_t{1} << r) - 1;
  while (s < limit) {
    if (pred(static_cast<Mask>(s)))
      return static_cast<Mask>(s);
    const std::uint64_t c = s & (~s + 1);
    const std::uint64_t t = s + c;
    s = (((t ^ s) >> 2) / c) | t;
  }
  return std::nullopt;
}

template <class Pred>
OracleResult descending_scan(std::size_t n, std::size_t top, Pred &&pred) {
  for (std::size_t r = top; r >= 1; --r)
    if (auto hit = first_subset(n, r, pred))
      return {r, to_node_set(*hit)};
  return {};
}

} // namespace

OracleResult max_k_club_bruteforce(const Graph &g, int k,
                                   std::optional<std::size_t> size_cap) {
  if (k < 1)
    throw std::invalid_argument("k must be positive");
  const auto adj = adjacency_masks(g);
  const std::size_t n = g.num_nodes();
  const std::size_t top = size_cap ? std::min(*size_cap, n) : n;
  auto result = descending_scan(
      n, top, [&](Mask s) { return mask_is_k_club(adj, s, k); });
  if (result.size > 0 && !is_k_club(g, result.witness, k))
    throw VerificationError("oracle witness fails k-club verification");
  return result;
}

OracleResult max_clique_bruteforce(const Graph &g) {
  const auto adj = adjacency_masks(g);
  return descending_scan(g.num_nodes(), g.num_nodes(),
                         [&](Mask s) { return mask_is_clique(adj, s); });
}

} // namespace kclub
