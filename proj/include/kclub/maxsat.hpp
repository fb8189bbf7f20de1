#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kclub/cnf.hpp"

namespace kclub {

struct SolveBudget {
  double time_limit = 3600.0; ///< seconds, must be positive
  std::optional<std::uint64_t> node_limit;
};

enum class SolveStatus { Optimal, Feasible, Unknown };

std::string_view status_name(SolveStatus s);

struct SolveResult {
  SolveStatus status = SolveStatus::Unknown;
  std::optional<Assignment> best_assignment;
  std::size_t lower_bound = 0; ///< satisfied softs of best_assignment
  std::size_t upper_bound = 0; ///< proven bound on the optimum
  double elapsed = 0.0;
  std::uint64_t nodes = 0;
};

/// Search controls for the internal engine that do not change the result
/// of a completed search.
struct EngineHints {
  /// Branching priority per variable (index var - 1); higher goes first.
  /// Empty means occurrence count.
  std::vector<double> priority;
  /// Hard-satisfying starting incumbent; ignored if it violates a clause.
  std::optional<Assignment> initial;
};

/// Exact depth-first branch and bound for partial MAX-SAT with positive
/// unit soft clauses: unit propagation over watched literals, a
/// clique-cover bound on the binary conflicts between open soft variables
/// and chronological backtracking. Throws SolverError when the hard clauses
/// are unsatisfiable.
SolveResult solve_internal(const WcnfFormula &f, const SolveBudget &budget,
                           const EngineHints &hints = {});

/// Runs `<command...> <wcnf-path>` with the time limit enforced, parses its
/// evaluation-format output and validates the returned assignment.
SolveResult solve_external(const WcnfFormula &f,
                           const std::vector<std::string> &command,
                           const SolveBudget &budget);

/// (upper - lower) / upper. Throws std::domain_error when upper is 0.
double optimality_gap(const SolveResult &r);

} // namespace kclub
