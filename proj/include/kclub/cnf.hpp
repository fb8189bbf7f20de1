#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "kclub/graph.hpp"

namespace kclub {

/// Boolean variable index, 1-based as in DIMACS.
using Var = std::uint32_t;

/// A literal stored as its signed DIMACS code.
class Lit {
public:
  constexpr Lit() = default;
  static constexpr Lit pos(Var v) { return Lit(static_cast<std::int32_t>(v)); }
  static constexpr Lit neg(Var v) { return Lit(-static_cast<std::int32_t>(v)); }
  static Lit from_dimacs(std::int64_t code);

  constexpr Var var() const {
    return static_cast<Var>(code_ < 0 ? -code_ : code_);
  }
  constexpr bool negative() const { return code_ < 0; }
  constexpr std::int32_t dimacs() const { return code_; }
  constexpr Lit operator~() const { return Lit(-code_); }

  friend constexpr bool operator==(Lit, Lit) = default;
  // Orders by variable, negative before positive.
  friend constexpr auto operator<=>(Lit a, Lit b) {
    if (auto c = a.var() <=> b.var(); c != 0)
      return c;
    return b.negative() <=> a.negative();
  }

private:
  constexpr explicit Lit(std::int32_t code) : code_(code) {}
  std::int32_t code_ = 0;
};

/// Set of literals. Construction sorts and throws std::invalid_argument on
/// duplicate or complementary literals, so tautologies never exist.
class Clause {
public:
  Clause() = default;
  explicit Clause(std::vector<Lit> lits);
  Clause(std::initializer_list<Lit> lits) : Clause(std::vector<Lit>(lits)) {}

  std::span<const Lit> lits() const { return lits_; }
  std::size_t size() const { return lits_.size(); }
  auto begin() const { return lits_.begin(); }
  auto end() const { return lits_.end(); }
  bool contains(Lit l) const;

  friend bool operator==(const Clause &, const Clause &) = default;

private:
  std::vector<Lit> lits_;
};

struct ClauseHash {
  std::size_t operator()(const Clause &c) const;
};

/// Truth assignment over variables 1..size().
class Assignment {
public:
  Assignment() = default;
  explicit Assignment(std::size_t num_vars, bool value = false)
      : values_(num_vars, value ? 1 : 0) {}

  std::size_t size() const { return values_.size(); }
  bool operator[](Var v) const { return values_[v - 1] != 0; }
  void set(Var v, bool value) { values_[v - 1] = value ? 1 : 0; }
  bool satisfies(Lit l) const { return (*this)[l.var()] != l.negative(); }
  bool satisfies(const Clause &c) const;

  friend bool operator==(const Assignment &, const Assignment &) = default;

private:
  std::vector<char> values_;
};

/// PARTIAL MAX-SAT instance: hard clauses plus weight-1 positive unit
/// soft clauses.
class WcnfFormula {
public:
  WcnfFormula() = default;
  explicit WcnfFormula(std::size_t num_vars) : num_vars_(num_vars) {}

  std::size_t num_vars() const { return num_vars_; }
  void set_num_vars(std::size_t n);

  std::span<const Clause> hard() const { return hard_; }
  std::span<const Var> soft() const { return soft_; }
  std::size_t num_clauses() const { return hard_.size() + soft_.size(); }

  void add_hard(Clause c);
  /// Adds the soft unit {x_v}; throws if v is already soft.
  void add_soft(Var v);
  bool is_soft(Var v) const;

  /// Removes repeated hard clauses, keeping first occurrences in order.
  void deduplicate_hard();

  /// Throws std::logic_error when an invariant is broken.
  void validate() const;

  friend bool operator==(const WcnfFormula &a, const WcnfFormula &b) {
    return a.num_vars_ == b.num_vars_ && a.hard_ == b.hard_ &&
           a.soft_ == b.soft_;
  }

private:
  std::size_t num_vars_ = 0;
  std::vector<Clause> hard_;
  std::vector<Var> soft_;
  std::vector<char> soft_flag_;
};

enum class WcnfStyle {
  Classic, ///< "p wcnf" header, hard clauses carry the top weight
  Modern,  ///< header-less 2022 format, hard clauses prefixed with 'h'
};

std::string write_wcnf(const WcnfFormula &f,
                       WcnfStyle style = WcnfStyle::Classic);

/// Reads the classic format (as written by write_wcnf). Only unit-weight
/// positive unit soft clauses are accepted.
WcnfFormula parse_wcnf(std::string_view text);

std::size_t count_satisfied_soft(const WcnfFormula &f, const Assignment &a);

/// Index of the first hard clause falsified by a, if any.
std::optional<std::size_t> first_violated_hard(const WcnfFormula &f,
                                               const Assignment &a);

enum class SolverStatus { Optimum, Satisfiable, Unsatisfiable, Unknown };

struct SolverOutput {
  SolverStatus status = SolverStatus::Unknown;
  std::optional<Assignment> assignment;
  std::optional<std::uint64_t> cost; ///< last "o" line
};

/// Parses MAX-SAT evaluation output ("s", "o" and "v" lines; both signed
/// literal and 0/1-string value lines). Throws SolverError when the status
/// line is missing, the assignment does not cover num_vars, or the
/// assignment falsifies a hard clause.
SolverOutput parse_solver_output(std::string_view text, const WcnfFormula &f);

// ---------------------------------------------------------------------------
// Variable bookkeeping shared by the encoders.

struct NodeVar {
  Node node;
  friend auto operator<=>(const NodeVar &, const NodeVar &) = default;
};

/// Tseitin variable for the conjunction of a set of intermediate nodes.
struct PathAux {
  std::vector<Node> nodes; ///< sorted
  friend auto operator<=>(const PathAux &, const PathAux &) = default;
};

/// Reachability variable for (i, j) at walk length `length`.
struct ReachVar {
  Node from;
  Node to;
  int length;
  friend auto operator<=>(const ReachVar &, const ReachVar &) = default;
};

using VarRole = std::variant<NodeVar, PathAux, ReachVar>;

struct VarRoleHash {
  std::size_t operator()(const VarRole &r) const;
};

/// Bijection between variable indices and roles. NodeVar(i) is always
/// variable i + 1.
class VarMap {
public:
  explicit VarMap(std::size_t num_nodes);

  /// Index of `role`, allocating the next index on first use. PathAux
  /// node lists are canonicalized (sorted) first.
  Var fresh_var(VarRole role);
  std::optional<Var> find(const VarRole &role) const;

  Var node_var(Node v) const { return static_cast<Var>(v) + 1; }
  const VarRole &role(Var v) const { return roles_[v - 1]; }
  std::size_t size() const { return roles_.size(); }
  std::size_t num_nodes() const { return num_nodes_; }

  /// Sidecar lines "x <i> <var>", "y <var> <nodes...>", "v <var> <i> <j> <l>"
  /// with 1-based node labels.
  std::string to_sidecar() const;
  static VarMap from_sidecar(std::string_view text);

private:
  std::size_t num_nodes_;
  std::vector<VarRole> roles_;
  std::unordered_map<VarRole, Var, VarRoleHash> index_;
};

} // namespace kclub
