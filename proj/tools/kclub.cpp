#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kclub/commands.hpp"
#include "kclub/error.hpp"
#include "kclub/graph_io.hpp"
#include "kclub/oracle.hpp"
#include "kclub/pipeline.hpp"

namespace fs = std::filesystem;
using namespace kclub;

namespace {

constexpr int kExitVerification = 3;

struct GraphArgs {
  std::string path;
  std::string format;

  Graph load() const {
    const GraphFormat fmt = format.empty() ? format_from_extension(path)
                                           : parse_format_name(format);
    ParsedGraph parsed = read_graph_file(path, fmt);
    if (parsed.self_loops_dropped > 0)
      std::cerr << "warning: dropped " << parsed.self_loops_dropped
                << " self-loop(s)\n";
    if (parsed.duplicate_edges_dropped > 0)
      std::cerr << "warning: dropped " << parsed.duplicate_edges_dropped
                << " duplicate edge(s)\n";
    return std::move(parsed.graph);
  }
};

void add_graph_args(CLI::App *cmd, GraphArgs &args) {
  cmd->add_option("graph", args.path, "Graph file")->required();
  cmd->add_option("--format", args.format,
                  "edge, col or metis (default: by extension)")
      ->check(CLI::IsMember({"edge", "col", "metis"}));
}

void emit(const std::string &text, const std::string &out) {
  if (out.empty())
    std::cout << text;
  else
    write_text_file(out, text);
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Maximum k-club toolkit: PARTIAL MAX-SAT encodings and "
               "solvers"};
  app.require_subcommand(1);

  // gen
  GenRequest gen;
  std::string gen_ndv = "min";
  std::string gen_out = ".";
  auto *gen_cmd = app.add_subcommand("gen", "Generate connected random graphs");
  gen_cmd->add_option("--n", gen.n, "Number of nodes")->required();
  gen_cmd->add_option("--density", gen.density, "Expected edge density D")
      ->required();
  gen_cmd->add_option("--ndv", gen_ndv, "Degree variance preset")
      ->check(CLI::IsMember({"min", "max"}));
  gen_cmd->add_option("--count", gen.count, "Number of samples");
  gen_cmd->add_option("--seed", gen.seed, "Seed of the first sample");
  gen_cmd->add_option("--max-attempts", gen.max_attempts,
                      "Rejections allowed per sample");
  gen_cmd->add_option("--out", gen_out, "Output directory");

  // shared options
  GraphArgs graph;
  int k = 2;
  std::string method = "paths";
  std::string solver = "internal";
  double time_limit = kDefaultTimeLimit;
  std::string out;

  auto add_k = [&](CLI::App *cmd) {
    cmd->add_option("--k", k, "Distance bound k")->check(CLI::PositiveNumber);
  };
  auto add_method = [&](CLI::App *cmd) {
    cmd->add_option("--method", method, "Encoding")
        ->check(CLI::IsMember({"paths", "reach"}));
  };
  auto add_solver = [&](CLI::App *cmd) {
    cmd->add_option("--solver", solver, "internal or external:<command>");
    cmd->add_option("--time-limit", time_limit, "Seconds, encoding included")
        ->check(CLI::PositiveNumber);
  };

  auto *enc_cmd = app.add_subcommand("encode", "Write the WCNF and variable map");
  add_graph_args(enc_cmd, graph);
  add_k(enc_cmd);
  add_method(enc_cmd);
  enc_cmd->add_option("--out", out, "WCNF path (default: <graph>.wcnf)");

  auto *solve_cmd = app.add_subcommand("solve", "Find a maximum k-club");
  add_graph_args(solve_cmd, graph);
  add_k(solve_cmd);
  add_method(solve_cmd);
  add_solver(solve_cmd);
  solve_cmd->add_option("--out", out, "Write the CSV record here");

  std::vector<std::int64_t> nodes;
  auto *verify_cmd = app.add_subcommand("verify", "Check a node set");
  add_graph_args(verify_cmd, graph);
  add_k(verify_cmd);
  verify_cmd->add_option("nodes", nodes, "1-based node labels")->required();

  std::string stats_dir;
  std::vector<int> stats_ks;
  auto *stats_cmd =
      app.add_subcommand("stats", "Table of n, m, density and k-club numbers");
  stats_cmd->add_option("dir", stats_dir, "Instance directory")->required();
  stats_cmd->add_option("--k", stats_ks, "Values of k (default 2 3 4)")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  stats_cmd->add_option("--format", graph.format, "Force one input format")
      ->check(CLI::IsMember({"edge", "col", "metis"}));
  add_method(stats_cmd);
  add_solver(stats_cmd);
  stats_cmd->add_option("--out", out, "CSV path (default: stdout)");

  std::string config;
  std::optional<std::size_t> workers;
  auto *bench_cmd = app.add_subcommand("bench", "Run a benchmark config");
  bench_cmd->add_option("config", config, "Config file")->required();
  bench_cmd->add_option("--workers", workers, "Override the worker count")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--out", out,
                        "Per-run CSV path; the summary goes to "
                        "<out>.summary.csv (default: both on stdout)");

  bool clique = false;
  std::optional<std::size_t> size_cap;
  auto *oracle_cmd =
      app.add_subcommand("oracle", "Brute-force k-club number (n <= 24)");
  add_graph_args(oracle_cmd, graph);
  add_k(oracle_cmd);
  oracle_cmd->add_flag("--clique", clique, "Maximum clique instead");
  oracle_cmd->add_option("--size-cap", size_cap,
                         "Largest cardinality considered");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen_cmd) {
      gen.ndv = parse_ndv(gen_ndv);
      gen.out_dir = gen_out;
      for (const fs::path &p : cmd_gen(gen))
        std::cout << p.string() << '\n';
    } else if (*enc_cmd) {
      const Graph g = graph.load();
      const fs::path target =
          out.empty() ? fs::path(graph.path).replace_extension(".wcnf")
                      : fs::path(out);
      std::cout << summary_line(cmd_encode(g, k, parse_method(method), target))
                << '\n';
    } else if (*solve_cmd) {
      const Graph g = graph.load();
      const SolverChoice choice = parse_solver_choice(solver);
      const Method m = parse_method(method);
      const KClubRun run =
          solve_kclub(g, k, m, choice, SolveBudget{time_limit, {}});
      const std::string csv =
          run_csv_header() + "\n" +
          to_csv_row(make_record(fs::path(graph.path).stem().string(), g, k, m,
                                 choice, run)) +
          "\n";
      emit(csv, out);
      if (!out.empty())
        std::cout << csv;
      std::cout << "club " << format_nodes(run.club) << '\n';
    } else if (*verify_cmd) {
      const Graph g = graph.load();
      std::cout << format_verify(cmd_verify(g, k, nodes)) << '\n';
    } else if (*stats_cmd) {
      StatsRequest req;
      req.dir = stats_dir;
      if (!stats_ks.empty())
        req.ks = stats_ks;
      req.method = parse_method(method);
      req.solver = parse_solver_choice(solver);
      req.time_limit = time_limit;
      if (!graph.format.empty())
        req.format = parse_format_name(graph.format);
      emit(cmd_stats(req, std::cerr), out);
    } else if (*bench_cmd) {
      BenchConfig cfg = parse_bench_config(
          read_text_file(config), fs::path(config).parent_path());
      if (workers)
        cfg.workers = *workers;
      const BenchOutput result = run_bench(cfg, &std::cerr);
      std::string runs = bench_csv_header() + "\n";
      for (const BenchRun &r : result.runs)
        runs += to_csv_row(r) + "\n";
      const std::string summary = summary_csv(result.summary);
      if (out.empty()) {
        std::cout << runs << '\n' << summary;
      } else {
        write_text_file(out, runs);
        write_text_file(out + ".summary.csv", summary);
        std::cout << summary;
      }
    } else if (*oracle_cmd) {
      const Graph g = graph.load();
      const OracleResult r =
          clique ? max_clique_bruteforce(g) : max_k_club_bruteforce(g, k, size_cap);
      std::cout << "size " << r.size << '\n'
                << "club " << format_nodes(r.witness) << '\n';
    }
  } catch (const VerificationError &e) {
    std::cerr << "verification failed: " << e.what() << '\n';
    return kExitVerification;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
