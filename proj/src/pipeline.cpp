#include "kclub/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <sstream>
#include <stdexcept>

#include "kclub/error.hpp"

namespace kclub {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

// Nodes within `radius` of any source.
std::vector<Node> ball(const Graph &g, std::span<const Node> sources,
                       int radius, std::vector<int> &dist) {
  std::vector<Node> members;
  std::deque<Node> queue;
  for (Node s : sources) {
    if (dist[s] == kUnreachable) {
      dist[s] = 0;
      members.push_back(s);
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    const Node u = queue.front();
    queue.pop_front();
    if (dist[u] == radius)
      continue;
    for (Node w : g.neighbors(u)) {
      if (dist[w] != kUnreachable)
        continue;
      dist[w] = dist[u] + 1;
      members.push_back(w);
      queue.push_back(w);
    }
  }
  for (Node v : members)
    dist[v] = kUnreachable;
  return members;
}

// Adds outside nodes, most connected to the club first, while the result
// stays a k-club. The number of membership tests is capped.
NodeSet grow(const Graph &g, NodeSet club, int k) {
  const std::size_t n = g.num_nodes();
  std::size_t tests_left = 4 * n;
  bool grew = true;
  while (grew && tests_left > 0) {
    grew = false;
    std::vector<std::size_t> links(n, 0);
    for (Node v : club)
      for (Node w : g.neighbors(v))
        ++links[w];
    std::vector<Node> candidates;
    for (Node v = 0; v < n; ++v)
      if (links[v] > 0 && !club.contains(v))
        candidates.push_back(v);
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](Node a, Node b) { return links[a] > links[b]; });
    for (Node v : candidates) {
      if (tests_left == 0)
        break;
      --tests_left;
      std::vector<Node> next(club.begin(), club.end());
      next.push_back(v);
      NodeSet bigger(std::move(next));
      if (is_k_club(g, bigger, k)) {
        club = std::move(bigger);
        grew = true;
      }
    }
  }
  return club;
}

} // namespace

SolverChoice parse_solver_choice(std::string_view text) {
  if (text == "internal")
    return {};
  constexpr std::string_view prefix = "external:";
  if (text.substr(0, prefix.size()) == prefix) {
    SolverChoice s;
    s.external = true;
    std::istringstream in{std::string(text.substr(prefix.size()))};
    for (std::string tok; in >> tok;)
      s.command.push_back(tok);
    if (s.command.empty())
      throw std::invalid_argument("external solver command is empty");
    return s;
  }
  throw std::invalid_argument("unknown solver '" + std::string(text) +
                              "' (expected internal or external:<cmd>)");
}

std::string solver_label(const SolverChoice &s) {
  return s.external ? "external" : "internal";
}

NodeSet greedy_seed(const Graph &g, int k) {
  if (k < 1)
    throw std::invalid_argument("k must be positive");
  const std::size_t n = g.num_nodes();
  if (n == 0)
    return {};
  const int radius = k / 2;
  std::vector<int> dist(n, kUnreachable);
  std::vector<Node> best;
  auto consider = [&](std::span<const Node> sources) {
    auto members = ball(g, sources, radius, dist);
    if (members.size() > best.size())
      best = std::move(members);
  };
  for (Node v = 0; v < n; ++v)
    consider(std::span<const Node>(&v, 1));
  if (k % 2 == 1)
    for (auto [u, v] : g.edges()) {
      const Node ends[] = {u, v};
      consider(ends);
    }
  NodeSet seed = grow(g, NodeSet(std::move(best)), k);
  if (!is_k_club(g, seed, k))
    throw VerificationError("greedy seed is not a k-club");
  return seed;
}

KClubRun solve_kclub(const Graph &g, int k, Method method,
                     const SolverChoice &solver, const SolveBudget &budget) {
  if (!(budget.time_limit > 0.0))
    throw std::invalid_argument("time limit must be positive");
  const auto started = Clock::now();
  KClubRun run;

  const Encoding enc = encode(g, k, method);
  run.encode_seconds = seconds_since(started);
  run.num_vars = enc.formula.num_vars();
  run.num_clauses = enc.formula.num_clauses();

  const NodeSet seed = greedy_seed(g, k);
  SolveBudget remaining = budget;
  remaining.time_limit =
      std::max(budget.time_limit - seconds_since(started), 1e-3);

  const auto solve_started = Clock::now();
  SolveResult sr;
  if (solver.external) {
    sr = solve_external(enc.formula, solver.command, remaining);
  } else {
    EngineHints hints;
    hints.priority.assign(enc.formula.num_vars(), 0.0);
    for (Node v = 0; v < g.num_nodes(); ++v)
      hints.priority[enc.varmap.node_var(v) - 1] =
          static_cast<double>(g.degree(v));
    hints.initial = extend_assignment(enc, seed);
    sr = solve_internal(enc.formula, remaining, hints);
  }
  run.solve_seconds = seconds_since(solve_started);
  run.nodes = sr.nodes;

  run.club = seed;
  if (sr.best_assignment) {
    NodeSet found = decode(enc, *sr.best_assignment);
    if (!is_k_club(g, found, k))
      throw VerificationError("solver returned a set that is not a " +
                              std::to_string(k) + "-club");
    if (found.size() >= seed.size())
      run.club = std::move(found);
  }
  run.lower_bound = run.club.size();
  run.upper_bound = sr.upper_bound;
  if (run.upper_bound < run.lower_bound)
    throw VerificationError("solver bound " + std::to_string(sr.upper_bound) +
                            " is below a verified " + std::to_string(k) +
                            "-club of size " +
                            std::to_string(run.lower_bound));
  run.status = run.lower_bound == run.upper_bound ? SolveStatus::Optimal
               : run.club.empty()                 ? SolveStatus::Unknown
                                                  : SolveStatus::Feasible;
  if (sr.status == SolveStatus::Optimal && run.status != SolveStatus::Optimal)
    throw VerificationError("optimal solve left a gap");
  if (run.upper_bound > 0) {
    SolveResult bounds;
    bounds.status = run.status;
    bounds.lower_bound = run.lower_bound;
    bounds.upper_bound = run.upper_bound;
    run.gap = optimality_gap(bounds);
  }
  run.total_seconds = seconds_since(started);
  return run;
}

} // namespace kclub
