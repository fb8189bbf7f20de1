#include <doctest.h>

#include <random>

#include "kclub/oracle.hpp"
#include "support/oracles.hpp"

using namespace kclub;
using namespace testsupport;

TEST_SUITE("oracle") {

TEST_CASE("small graphs") {
  CHECK(max_k_club_bruteforce(cycle(5), 2).size == 5);
  CHECK(max_k_club_bruteforce(cycle(5), 1).size == 2);
  CHECK(max_k_club_bruteforce(cycle(7), 2).size == 3);
  CHECK(max_k_club_bruteforce(star(6), 2).size == 7);
  CHECK(max_k_club_bruteforce(star(6), 1).size == 2);
  CHECK(max_clique_bruteforce(complete(4)).size == 4);
  CHECK(max_clique_bruteforce(cycle(5)).size == 2);
}

TEST_CASE("size cap bounds the scan") {
  const auto r = max_k_club_bruteforce(complete(6), 2, 4);
  CHECK(r.size == 4);
  CHECK(r.witness.size() == 4);
}

TEST_CASE("guards") {
  CHECK_THROWS(max_k_club_bruteforce(Graph(25), 2));
  CHECK_THROWS(max_clique_bruteforce(Graph(25)));
  CHECK_THROWS(max_k_club_bruteforce(cycle(5), 0));
}

TEST_CASE("agrees with naive enumeration") {
  std::mt19937_64 rng(51);
  for (int round = 0; round < 120; ++round) {
    const std::size_t n = 1 + round % 11;
    const Graph g = bernoulli_graph(rng, n, 0.1 + 0.07 * (round % 10));
    std::size_t prev = 0;
    for (int k = 1; k <= 4; ++k) {
      const OracleResult r = max_k_club_bruteforce(g, k);
      CHECK(r.size == naive_k_club_number(g, k));
      CHECK(r.witness.size() == r.size);
      CHECK(floyd_is_k_club(g, r.witness.members(), k));
      CHECK(r.size >= prev);
      prev = r.size;
      const auto d = diameter(g);
      CHECK((r.size == n) == (d && *d <= k));
    }
    CHECK(max_clique_bruteforce(g).size == max_k_club_bruteforce(g, 1).size);
  }
}

}
