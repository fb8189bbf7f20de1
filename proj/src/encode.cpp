#include "kclub/encode.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>

#include "kclub/error.hpp"

namespace kclub {

Method parse_method(std::string_view name) {
  if (name == "paths")
    return Method::Paths;
  if (name == "reach")
    return Method::Reach;
  throw std::invalid_argument("method must be 'paths' or 'reach'");
}

std::string_view method_name(Method m) {
  return m == Method::Paths ? "paths" : "reach";
}

namespace {

void check_k(int k) {
  if (k < 1)
    throw std::invalid_argument("k must be positive");
}

// Accumulates clauses while enforcing the size cap.
class ClauseSink {
public:
  ClauseSink(WcnfFormula &f, std::size_t cap) : f_(f), cap_(cap) {}

  void hard(std::vector<Lit> lits) {
    if (f_.num_clauses() + 1 > cap_)
      throw EncodingTooLarge("encoding exceeds the clause cap of " +
                             std::to_string(cap_));
    f_.add_hard(Clause(std::move(lits)));
  }

  void check_softs() const {
    if (f_.num_clauses() > cap_)
      throw EncodingTooLarge("encoding exceeds the clause cap of " +
                             std::to_string(cap_));
  }

private:
  WcnfFormula &f_;
  std::size_t cap_;
};

Encoding start(const Graph &g, int k, Method method) {
  Encoding e;
  e.graph = g;
  e.k = k;
  e.method = method;
  e.varmap = VarMap(g.num_nodes());
  e.formula = WcnfFormula(g.num_nodes());
  for (Node v = 0; v < g.num_nodes(); ++v)
    e.formula.add_soft(e.varmap.node_var(v));
  return e;
}

// BFS distances from `source`, not expanded past depth `cap`.
void capped_bfs(const Graph &g, Node source, int cap, std::vector<int> &dist,
                std::vector<Node> &queue) {
  std::fill(dist.begin(), dist.end(), kUnreachable);
  queue.clear();
  queue.push_back(source);
  dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Node u = queue[head];
    if (dist[u] == cap)
      continue;
    for (Node w : g.neighbors(u))
      if (dist[w] == kUnreachable) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
  }
}

// Enumerates simple paths from `from` to `to` with at most `k` edges and at
// least one intermediate node, calling emit(intermediates) for each.
class PathEnumerator {
public:
  PathEnumerator(const Graph &g, int k)
      : g_(g), k_(k), on_path_(g.num_nodes(), 0) {}

  template <class Emit>
  void run(Node from, Node to, const std::vector<int> &dist_to, Emit &&emit) {
    to_ = to;
    dist_to_ = &dist_to;
    on_path_[from] = on_path_[to] = 1;
    dfs(from, 0, emit);
    on_path_[from] = on_path_[to] = 0;
  }

private:
  template <class Emit> void dfs(Node u, int depth, Emit &emit) {
    for (Node w : g_.neighbors(u)) {
      if (w == to_) {
        if (depth > 0)
          emit(static_cast<const std::vector<Node> &>(inner_));
        continue;
      }
      const int rest = (*dist_to_)[w];
      if (on_path_[w] || rest == kUnreachable || depth + 1 + rest > k_)
        continue;
      on_path_[w] = 1;
      inner_.push_back(w);
      dfs(w, depth + 1, emit);
      inner_.pop_back();
      on_path_[w] = 0;
    }
  }

  const Graph &g_;
  int k_;
  Node to_ = 0;
  const std::vector<int> *dist_to_ = nullptr;
  std::vector<char> on_path_;
  std::vector<Node> inner_;
};

} // namespace

Encoding encode_paths(const Graph &g, int k, const EncodeOptions &opts) {
  check_k(k);
  Encoding e = start(g, k, Method::Paths);
  ClauseSink sink(e.formula, opts.clause_cap);
  sink.check_softs();
  const std::size_t n = g.num_nodes();

  std::vector<int> dist(n);
  std::vector<Node> queue;
  PathEnumerator paths(g, k);
  std::vector<Lit> clause;
  std::vector<Node> key;

  for (Node j = 0; j < n; ++j) {
    if (k >= 2)
      capped_bfs(g, j, k, dist, queue);
    for (Node i = 0; i < j; ++i) {
      if (g.adjacent(i, j))
        continue;
      clause = {Lit::neg(e.varmap.node_var(i)), Lit::neg(e.varmap.node_var(j))};
      if (k >= 2 && dist[i] != kUnreachable) {
        paths.run(i, j, dist, [&](const std::vector<Node> &inner) {
          if (inner.size() == 1) {
            clause.push_back(Lit::pos(e.varmap.node_var(inner[0])));
            return;
          }
          key.assign(inner.begin(), inner.end());
          std::sort(key.begin(), key.end());
          const std::size_t before = e.varmap.size();
          const Var y = e.varmap.fresh_var(PathAux{key});
          clause.push_back(Lit::pos(y));
          if (e.varmap.size() == before)
            return;
          // y <-> x_r1 & ... & x_rl, emitted once per intermediate set.
          e.formula.set_num_vars(e.varmap.size());
          std::vector<Lit> back{Lit::pos(y)};
          for (Node r : key) {
            sink.hard({Lit::neg(y), Lit::pos(e.varmap.node_var(r))});
            back.push_back(Lit::neg(e.varmap.node_var(r)));
          }
          sink.hard(std::move(back));
        });
        std::sort(clause.begin(), clause.end());
        clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
      }
      sink.hard(clause);
    }
  }
  e.formula.deduplicate_hard();
  return e;
}

Encoding encode_reach(const Graph &g, int k, const EncodeOptions &opts) {
  check_k(k);
  if (k == 1) {
    Encoding e = encode_paths(g, 1, opts);
    e.method = Method::Reach;
    return e;
  }
  Encoding e = start(g, k, Method::Reach);
  ClauseSink sink(e.formula, opts.clause_cap);
  sink.check_softs();
  const std::size_t n = g.num_nodes();
  std::deque<ReachVar> pending;

  auto reach_var = [&](Node from, Node to, int length) {
    const std::size_t before = e.varmap.size();
    const Var v = e.varmap.fresh_var(ReachVar{from, to, length});
    if (e.varmap.size() != before) {
      e.formula.set_num_vars(e.varmap.size());
      pending.push_back(ReachVar{from, to, length});
    }
    return v;
  };
  auto x = [&](Node v) { return e.varmap.node_var(v); };

  for (Node i = 0; i < n; ++i)
    for (Node j = i + 1; j < n; ++j) {
      if (g.adjacent(i, j))
        continue;
      std::vector<Lit> top{Lit::neg(x(i)), Lit::neg(x(j))};
      for (int l = 2; l <= k; ++l)
        top.push_back(Lit::pos(reach_var(i, j, l)));
      sink.hard(std::move(top));
    }

  // Definitions are emitted for every reachability variable referenced by
  // an emitted clause, adjacent pairs included; an undefined v would be
  // free and could satisfy a top clause spuriously.
  std::vector<Node> via;
  while (!pending.empty()) {
    const ReachVar rv = pending.front();
    pending.pop_front();
    const Var v = *e.varmap.find(rv);
    const Node i = rv.from, j = rv.to;
    via.clear();
    if (rv.length == 2) {
      std::set_intersection(g.neighbors(i).begin(), g.neighbors(i).end(),
                            g.neighbors(j).begin(), g.neighbors(j).end(),
                            std::back_inserter(via));
      if (via.empty()) {
        sink.hard({Lit::neg(v)});
        continue;
      }
      sink.hard({Lit::neg(v), Lit::pos(x(i))});
      sink.hard({Lit::neg(v), Lit::pos(x(j))});
      std::vector<Lit> some{Lit::neg(v)};
      for (Node r : via)
        some.push_back(Lit::pos(x(r)));
      sink.hard(std::move(some));
      for (Node r : via)
        sink.hard({Lit::neg(x(i)), Lit::neg(x(j)), Lit::pos(v), Lit::neg(x(r))});
    } else {
      // Successors r of i; r == j would need a v for the pair (j, j).
      for (Node r : g.neighbors(i))
        if (r != j)
          via.push_back(r);
      if (via.empty()) {
        sink.hard({Lit::neg(v)});
        continue;
      }
      sink.hard({Lit::neg(v), Lit::pos(x(i))});
      std::vector<Lit> some{Lit::neg(v)};
      std::vector<Var> shorter;
      for (Node r : via)
        shorter.push_back(reach_var(r, j, rv.length - 1));
      for (Var s : shorter)
        some.push_back(Lit::pos(s));
      sink.hard(std::move(some));
      for (Var s : shorter)
        sink.hard({Lit::neg(x(i)), Lit::pos(v), Lit::neg(s)});
    }
  }
  e.formula.deduplicate_hard();
  return e;
}

Encoding encode(const Graph &g, int k, Method method,
                const EncodeOptions &opts) {
  return method == Method::Paths ? encode_paths(g, k, opts)
                                 : encode_reach(g, k, opts);
}

NodeSet decode(const Encoding &e, const Assignment &a) {
  if (a.size() != e.formula.num_vars())
    throw std::invalid_argument("assignment size does not match encoding");
  if (auto bad = first_violated_hard(e.formula, a))
    throw std::invalid_argument("assignment falsifies hard clause #" +
                                std::to_string(*bad + 1));
  std::vector<Node> members;
  for (Node v = 0; v < e.graph.num_nodes(); ++v)
    if (a[e.varmap.node_var(v)])
      members.push_back(v);
  return NodeSet(std::move(members));
}

Assignment extend_assignment(const Encoding &e, const NodeSet &s) {
  const Graph &g = e.graph;
  const std::size_t n = g.num_nodes();
  if (!s.empty() && !is_k_club(g, s, e.k))
    throw std::invalid_argument("node set is not a " + std::to_string(e.k) +
                                "-club");
  Assignment a(e.formula.num_vars());
  std::vector<char> in(n, 0);
  for (Node v : s) {
    in[v] = 1;
    a.set(e.varmap.node_var(v), true);
  }

  // walk[l][u]: a walk of exactly l edges from u to the current target j
  // inside s that does not touch j before its last step.
  std::vector<std::vector<Node>> reach_by_target(n);
  int max_length = 0;
  for (Var var = static_cast<Var>(n) + 1; var <= e.varmap.size(); ++var) {
    const auto &role = e.varmap.role(var);
    if (const auto *aux = std::get_if<PathAux>(&role)) {
      a.set(var, std::all_of(aux->nodes.begin(), aux->nodes.end(),
                             [&](Node r) { return in[r] != 0; }));
    } else if (const auto *rv = std::get_if<ReachVar>(&role)) {
      reach_by_target[rv->to].push_back(var);
      max_length = std::max(max_length, rv->length);
    }
  }
  std::vector<std::vector<char>> walk(max_length + 1, std::vector<char>(n));
  for (Node j = 0; j < n; ++j) {
    if (reach_by_target[j].empty())
      continue;
    for (Node u = 0; u < n; ++u)
      walk[1][u] = u != j && in[u] && in[j] && g.adjacent(u, j);
    for (int l = 2; l <= max_length; ++l)
      for (Node u = 0; u < n; ++u) {
        char ok = 0;
        if (u != j && in[u])
          for (Node r : g.neighbors(u))
            if (r != j && walk[l - 1][r]) {
              ok = 1;
              break;
            }
        walk[l][u] = ok;
      }
    for (Var var : reach_by_target[j]) {
      const auto &rv = std::get<ReachVar>(e.varmap.role(var));
      a.set(var, walk[rv.length][rv.from] != 0);
    }
  }
  return a;
}

} // namespace kclub
