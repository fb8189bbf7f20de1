#include <doctest.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <random>

#include <unistd.h>

#include "kclub/encode.hpp"
#include "kclub/error.hpp"
#include "kclub/graph_io.hpp"
#include "kclub/maxsat.hpp"
#include "support/oracles.hpp"

using namespace kclub;
using namespace testsupport;
namespace fs = std::filesystem;

namespace {

// A shell script standing in for a solver.
class FakeSolver {
public:
  explicit FakeSolver(const std::string &body) {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("kclub-fake-" + std::to_string(::getpid()) + "-" +
             std::to_string(counter++) + ".sh");
    write_text_file(path_, "#!/bin/sh\n" + body);
    fs::permissions(path_, fs::perms::owner_all);
  }
  ~FakeSolver() {
    std::error_code ec;
    fs::remove(path_, ec);
  }
  std::vector<std::string> command() const { return {path_.string()}; }

private:
  fs::path path_;
};

WcnfFormula free_softs(std::size_t n) {
  WcnfFormula f(n);
  for (Var v = 1; v <= n; ++v)
    f.add_soft(v);
  return f;
}

bool on_path(const std::string &tool) {
  return std::system(("command -v " + tool + " >/dev/null 2>&1").c_str()) == 0;
}

} // namespace

TEST_SUITE("external") {

TEST_CASE("stub solver reporting the all-true optimum") {
  FakeSolver s("echo 's OPTIMUM FOUND'\necho 'o 0'\necho 'v 1 2 3 4 0'\n");
  const SolveResult r = solve_external(free_softs(4), s.command(), {10.0, {}});
  CHECK(r.status == SolveStatus::Optimal);
  CHECK(r.lower_bound == 4);
  CHECK(r.upper_bound == 4);
}

TEST_CASE("binary value line") {
  FakeSolver s("echo 's OPTIMUM FOUND'\necho 'o 1'\necho 'v 1101'\n");
  const SolveResult r = solve_external(free_softs(4), s.command(), {10.0, {}});
  CHECK(r.lower_bound == 3);
}

TEST_CASE("the solver receives the formula path") {
  FakeSolver s("grep -q '^p wcnf 2 2 3' \"$1\" || exit 3\n"
               "echo 's OPTIMUM FOUND'\necho 'v 1 2'\n");
  CHECK(solve_external(free_softs(2), s.command(), {10.0, {}}).lower_bound == 2);
}

TEST_CASE("inconsistent or invalid answers are errors") {
  WcnfFormula f = free_softs(2);
  f.add_hard(Clause{Lit::neg(1), Lit::neg(2)});
  FakeSolver violates("echo 's OPTIMUM FOUND'\necho 'v 1 2'\n");
  CHECK_THROWS_AS(solve_external(f, violates.command(), {10.0, {}}), SolverError);
  FakeSolver wrong_cost("echo 's OPTIMUM FOUND'\necho 'o 0'\necho 'v 1 -2'\n");
  CHECK_THROWS_AS(solve_external(f, wrong_cost.command(), {10.0, {}}), SolverError);
  FakeSolver silent("exit 0\n");
  CHECK_THROWS_AS(solve_external(f, silent.command(), {10.0, {}}), SolverError);
  FakeSolver unsat("echo 's UNSATISFIABLE'\n");
  CHECK_THROWS_AS(solve_external(f, unsat.command(), {10.0, {}}), SolverError);
  CHECK_THROWS_AS(solve_external(f, {"/nonexistent/solver"}, {10.0, {}}),
                  SolverError);
}

TEST_CASE("satisfiable without proof keeps the trivial upper bound") {
  FakeSolver s("echo 'o 1'\necho 's SATISFIABLE'\necho 'v 1 -2 3'\n");
  const SolveResult r = solve_external(free_softs(3), s.command(), {10.0, {}});
  CHECK(r.status == SolveStatus::Feasible);
  CHECK(r.lower_bound == 2);
  CHECK(r.upper_bound == 3);
}

TEST_CASE("a hanging solver is killed at the limit") {
  FakeSolver s("echo 'o 3'\nexec sleep 30\n");
  const auto t0 = std::chrono::steady_clock::now();
  const SolveResult r = solve_external(free_softs(3), s.command(), {0.5, {}});
  const double waited =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(r.status == SolveStatus::Unknown);
  CHECK_FALSE(r.best_assignment.has_value());
  CHECK(waited < 5.0);
}

TEST_CASE("real solver agrees with the internal engine" *
          doctest::skip(!on_path("rc2.py"))) {
  std::mt19937_64 rng(41);
  for (int round = 0; round < 5; ++round) {
    const Graph g = bernoulli_graph(rng, 30, 0.15);
    const Encoding e = encode(g, 2 + round % 2, round % 2 ? Method::Reach : Method::Paths);
    const SolveResult ext =
        solve_external(e.formula, {"rc2.py", "-vv"}, {60.0, {}});
    const SolveResult in = solve_internal(e.formula, {60.0, {}});
    CHECK(ext.status == SolveStatus::Optimal);
    CHECK(ext.lower_bound == in.lower_bound);
  }
}

}
