#pragma once

#include <cstddef>
#include <optional>

#include "kclub/graph.hpp"

namespace kclub {

/// Largest graph the brute-force oracles accept.
inline constexpr std::size_t kOracleMaxNodes = 24;

struct OracleResult {
  std::size_t size = 0;
  NodeSet witness;
};

/// Exhaustive maximum k-club: scans subsets by decreasing cardinality and
/// returns the first k-club. `size_cap` bounds the largest cardinality
/// examined. No pruning, since k-clubs are not closed under subsets.
OracleResult max_k_club_bruteforce(const Graph &g, int k,
                                   std::optional<std::size_t> size_cap = {});

/// Exhaustive maximum clique by the same descending scan.
OracleResult max_clique_bruteforce(const Graph &g);

} // namespace kclub
