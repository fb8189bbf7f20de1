#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "kclub/encode.hpp"
#include "kclub/graph.hpp"
#include "kclub/maxsat.hpp"

namespace kclub {

/// Which MAX-SAT back end a run uses.
struct SolverChoice {
  bool external = false;
  std::vector<std::string> command; ///< external command, tokenized
};

/// "internal" or "external:<command line>"; the command is split on
/// whitespace.
SolverChoice parse_solver_choice(std::string_view text);
std::string solver_label(const SolverChoice &s);

/// A k-club found without search: the best ball of radius floor(k/2)
/// (around a node, or around an edge when k is odd), then grown one node at
/// a time while it stays a k-club. Never empty for n > 0.
NodeSet greedy_seed(const Graph &g, int k);

struct KClubRun {
  NodeSet club;                  ///< verified k-club, the best found
  SolveStatus status = SolveStatus::Unknown;
  std::size_t lower_bound = 0;   ///< club.size()
  std::size_t upper_bound = 0;
  double gap = 0.0;
  std::size_t num_vars = 0;
  std::size_t num_clauses = 0;
  std::uint64_t nodes = 0;
  double encode_seconds = 0.0;
  double solve_seconds = 0.0;
  double total_seconds = 0.0;
};

/// Encodes, solves within `budget` (encoding time counts against it),
/// decodes and checks the answer with is_k_club. The greedy seed is the
/// fallback when the solver returns nothing better. Throws
/// VerificationError if a decoded set is not a k-club.
KClubRun solve_kclub(const Graph &g, int k, Method method,
                     const SolverChoice &solver, const SolveBudget &budget);

} // namespace kclub
