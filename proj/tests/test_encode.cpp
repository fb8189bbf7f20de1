#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "kclub/encode.hpp"
#include "kclub/error.hpp"
#include "kclub/oracle.hpp"
#include "support/oracles.hpp"

using namespace kclub;
using namespace testsupport;

namespace {

Clause cl(std::initializer_list<int> codes) {
  std::vector<Lit> lits;
  for (int c : codes)
    lits.push_back(Lit::from_dimacs(c));
  return Clause(std::move(lits));
}

std::set<std::vector<int>> clause_set(std::span<const Clause> clauses) {
  std::set<std::vector<int>> out;
  for (const Clause &c : clauses) {
    std::vector<int> codes;
    for (Lit l : c)
      codes.push_back(l.dimacs());
    out.insert(codes);
  }
  return out;
}

std::set<std::vector<int>> clause_set(std::initializer_list<Clause> clauses) {
  return clause_set(std::span<const Clause>(clauses.begin(), clauses.size()));
}

// Calls visit(assignment) for every assignment satisfying all hard clauses.
template <class Visit>
void for_each_model(const WcnfFormula &f, Visit &&visit) {
  std::vector<BitClause> hard;
  for (const Clause &c : f.hard()) {
    BitClause b;
    for (Lit l : c)
      (l.negative() ? b.neg : b.pos) |= 1u << (l.var() - 1);
    hard.push_back(b);
  }
  for (std::uint32_t a = 0; a < (1u << f.num_vars()); ++a) {
    bool ok = true;
    for (const BitClause &c : hard)
      if (!((a & c.pos) | (~a & c.neg))) {
        ok = false;
        break;
      }
    if (!ok)
      continue;
    Assignment m(f.num_vars());
    for (Var v = 1; v <= f.num_vars(); ++v)
      m.set(v, a >> (v - 1) & 1);
    visit(m);
  }
}

std::vector<Node> members_of(std::uint32_t mask, std::size_t n) {
  std::vector<Node> out;
  for (Node v = 0; v < n; ++v)
    if (mask >> v & 1)
      out.push_back(v);
  return out;
}

Graph connected_bernoulli(std::mt19937_64 &rng, std::size_t n, double p) {
  for (;;) {
    Graph g = bernoulli_graph(rng, n, p);
    if (is_connected(g))
      return g;
  }
}

} // namespace

TEST_SUITE("encode") {

TEST_CASE("paths, C4, k=2") {
  const Encoding e = encode_paths(cycle(4), 2);
  CHECK(e.formula.num_vars() == 4);
  CHECK(e.formula.num_clauses() == 6);
  CHECK(clause_set(e.formula.hard()) ==
        clause_set({cl({-1, -3, 2, 4}), cl({-2, -4, 1, 3})}));
}

TEST_CASE("paths, P4, k=3") {
  const Encoding e = encode_paths(path(4), 3);
  CHECK(e.formula.num_vars() == 5);
  CHECK(e.formula.num_clauses() == 10);
  REQUIRE(e.varmap.find(PathAux{{1, 2}}) == 5u);
  CHECK(clause_set(e.formula.hard()) ==
        clause_set({cl({-1, -3, 2}), cl({-2, -4, 3}), cl({-1, -4, 5}),
                    cl({-5, 2}), cl({-5, 3}), cl({-2, -3, 5})}));
  CHECK(e.formula.num_vars() <= 4 + 3);
  CHECK(e.formula.num_clauses() <= 10 + 6);
}

TEST_CASE("complete graphs need no hard clauses") {
  for (int k = 1; k <= 4; ++k)
    for (Method m : {Method::Paths, Method::Reach}) {
      const Encoding e = encode(complete(5), k, m);
      CHECK(e.formula.hard().empty());
      CHECK(e.formula.num_vars() == 5);
      CHECK(e.formula.num_clauses() == 5);
    }
}

TEST_CASE("soft clauses are the node variables") {
  std::mt19937_64 rng(2);
  const Graph g = bernoulli_graph(rng, 8, 0.4);
  for (Method m : {Method::Paths, Method::Reach}) {
    const Encoding e = encode(g, 3, m);
    REQUIRE(e.formula.soft().size() == 8);
    for (Node v = 0; v < 8; ++v)
      CHECK(e.formula.soft()[v] == v + 1);
  }
}

TEST_CASE("reach, P3, k=2") {
  const Encoding e = encode_reach(path(3), 2);
  const auto v = e.varmap.find(ReachVar{0, 2, 2});
  REQUIRE(v == 4u);
  CHECK(e.formula.num_vars() == 4);
  CHECK(clause_set(e.formula.hard()) ==
        clause_set({cl({-1, -3, 4}), cl({-4, 1}), cl({-4, 3}), cl({-4, 2}),
                    cl({-1, -3, 4, -2})}));
}

TEST_CASE("reach, two isolated nodes") {
  const Encoding e = encode_reach(Graph(2), 2);
  CHECK(clause_set(e.formula.hard()) == clause_set({cl({-1, -2, 3}), cl({-3})}));
  const auto best = enumerate_optimum(e.formula);
  CHECK(best == 1u);
}

TEST_CASE("reach with k=1 is the clique encoding") {
  std::mt19937_64 rng(4);
  const Graph g = bernoulli_graph(rng, 9, 0.5);
  CHECK(encode_reach(g, 1).formula == encode_paths(g, 1).formula);
}

TEST_CASE("size laws of the paths encoding") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> pd(0.05, 0.9);
  for (int round = 0; round < 150; ++round) {
    const std::size_t n = 2 + round % 30;
    const Graph g = bernoulli_graph(rng, n, pd(rng));
    const std::size_t m = g.num_edges();
    const Encoding two = encode_paths(g, 2);
    CHECK(two.formula.num_vars() == n);
    CHECK(two.formula.num_clauses() == n * (n + 1) / 2 - m);
    const Encoding three = encode_paths(g, 3);
    CHECK(three.formula.num_vars() <= n + m);
    CHECK(three.formula.num_clauses() <= n * (n + 1) / 2 + 2 * m);
  }
}

TEST_CASE("models decode exactly to the k-clubs") {
  // Exhaustive over all assignments: every model decodes to a k-club and
  // every k-club (plus the empty set) is the node part of some model.
  std::mt19937_64 rng(12);
  int checked = 0;
  for (int round = 0; round < 400 && checked < 60; ++round) {
    const std::size_t n = 3 + round % 4;
    const Graph g = bernoulli_graph(rng, n, 0.45);
    for (int k = 1; k <= 4; ++k)
      for (Method m : {Method::Paths, Method::Reach}) {
        const Encoding e = encode(g, k, m);
        if (e.formula.num_vars() > 18)
          continue;
        ++checked;
        std::set<std::uint32_t> seen;
        for_each_model(e.formula, [&](const Assignment &a) {
          const NodeSet s = decode(e, a);
          std::uint32_t mask = 0;
          for (Node v : s)
            mask |= 1u << v;
          seen.insert(mask);
          if (!s.empty())
            CHECK(floyd_is_k_club(g, s.members(), k));
        });
        for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
          const auto members = members_of(mask, n);
          if (floyd_is_k_club(g, members, k))
            CHECK(seen.count(mask) == 1);
        }
        CHECK(seen.count(0) == 1);
      }
  }
  CHECK(checked >= 60);
}

TEST_CASE("witness assignments satisfy every hard clause") {
  std::mt19937_64 rng(13);
  for (int round = 0; round < 60; ++round) {
    const std::size_t n = 4 + round % 9;
    const Graph g = connected_bernoulli(rng, n, 0.35);
    for (int k = 1; k <= 4; ++k) {
      const OracleResult best = max_k_club_bruteforce(g, k);
      for (Method m : {Method::Paths, Method::Reach}) {
        const Encoding e = encode(g, k, m);
        const Assignment a = extend_assignment(e, best.witness);
        CHECK_FALSE(first_violated_hard(e.formula, a).has_value());
        CHECK(decode(e, a) == best.witness);
        CHECK(count_satisfied_soft(e.formula, a) == best.size);
      }
    }
  }
}

TEST_CASE("witness examples") {
  const Encoding c4 = encode_paths(cycle(4), 2);
  const Assignment all = extend_assignment(c4, NodeSet::all(4));
  for (Var v = 1; v <= 4; ++v)
    CHECK(all[v]);
  CHECK_FALSE(first_violated_hard(c4.formula, all).has_value());

  const Encoding p4 = encode_paths(path(4), 3);
  const Assignment p4_all = extend_assignment(p4, NodeSet::all(4));
  CHECK(p4_all[5]);
  CHECK_FALSE(first_violated_hard(p4.formula, p4_all).has_value());

  const Encoding r = encode_reach(path(5), 4);
  const Assignment one = extend_assignment(r, NodeSet{2});
  for (Var v = 1; v <= r.formula.num_vars(); ++v)
    CHECK(one[v] == (v == 3));
  CHECK_FALSE(first_violated_hard(r.formula, one).has_value());

  CHECK_THROWS_AS(extend_assignment(c4, NodeSet{0, 2}), std::invalid_argument);
}

TEST_CASE("decode") {
  const Encoding e = encode_paths(complete(3), 2);
  CHECK(decode(e, Assignment(3)).empty());
  CHECK(decode(e, Assignment(3, true)) == NodeSet{0, 1, 2});
  const Encoding c4 = encode_paths(cycle(4), 2);
  Assignment bad(4);
  bad.set(1, true);
  bad.set(3, true);
  CHECK_THROWS_AS(decode(c4, bad), std::invalid_argument);
}

TEST_CASE("clause cap") {
  EncodeOptions tiny;
  tiny.clause_cap = 10;
  CHECK_THROWS_AS(encode_paths(cycle(12), 3, tiny), EncodingTooLarge);
  CHECK_THROWS_AS(encode_reach(cycle(12), 3, tiny), EncodingTooLarge);
  CHECK_THROWS(encode_paths(cycle(5), 0));
}

TEST_CASE("the all-false assignment satisfies every encoding") {
  std::mt19937_64 rng(14);
  for (int round = 0; round < 40; ++round) {
    const Graph g = bernoulli_graph(rng, 3 + round % 15, 0.3);
    for (int k = 1; k <= 4; ++k)
      for (Method m : {Method::Paths, Method::Reach}) {
        const Encoding e = encode(g, k, m);
        CHECK_FALSE(
            first_violated_hard(e.formula, Assignment(e.formula.num_vars()))
                .has_value());
      }
  }
}

}
