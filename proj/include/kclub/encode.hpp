#pragma once

#include <cstddef>
#include <string_view>

#include "kclub/cnf.hpp"
#include "kclub/graph.hpp"

namespace kclub {

enum class Method {
  Paths, ///< enumerate short paths, Tseitin variables per intermediate set
  Reach, ///< recursive walk-length reachability variables
};

Method parse_method(std::string_view name);
std::string_view method_name(Method m);

struct EncodeOptions {
  /// Abort with EncodingTooLarge once soft + hard clauses exceed this.
  std::size_t clause_cap = 50'000'000;
};

/// A PARTIAL MAX-SAT instance for the maximum k-club problem on `graph`.
/// Soft clauses are exactly {x_1}, ..., {x_n}; variable i + 1 is node i.
struct Encoding {
  WcnfFormula formula;
  VarMap varmap{0};
  Graph graph;
  int k = 1;
  Method method = Method::Paths;
};

/// Hard clause per non-adjacent pair {i, j}: {-x_i, -x_j} plus one literal
/// per simple i-j path of length 2..k (x_r for a single intermediate node,
/// a shared Tseitin variable for longer intermediate sets).
Encoding encode_paths(const Graph &g, int k, const EncodeOptions &opts = {});

/// Top clause {-x_i, -x_j, v^2_ij, ..., v^k_ij} per non-adjacent pair with
/// definitions for every reachability variable the clauses depend on.
Encoding encode_reach(const Graph &g, int k, const EncodeOptions &opts = {});

Encoding encode(const Graph &g, int k, Method method,
                const EncodeOptions &opts = {});

/// Selected nodes of a hard-satisfying assignment. Throws
/// std::invalid_argument if a hard clause is falsified.
NodeSet decode(const Encoding &e, const Assignment &a);

/// Witness assignment for a k-club: node variables from s, auxiliary
/// variables from their definitions. Throws std::invalid_argument if s is
/// not a k-club.
Assignment extend_assignment(const Encoding &e, const NodeSet &s);

} // namespace kclub
