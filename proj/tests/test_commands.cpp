#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <unistd.h>

#include "kclub/commands.hpp"
#include "kclub/error.hpp"
#include "support/oracles.hpp"

using namespace kclub;
using namespace testsupport;
namespace fs = std::filesystem;

namespace {

class TempDir {
public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("kclub-test-" + std::to_string(::getpid()) + "-" +
             std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  const fs::path &path() const { return path_; }

private:
  fs::path path_;
};

std::vector<std::string> lines_of(const std::string &text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    out.push_back(line);
  return out;
}

std::map<std::string, std::string> read_meta(const fs::path &p) {
  std::map<std::string, std::string> kv;
  for (const auto &line : lines_of(read_text_file(p))) {
    const auto eq = line.find('=');
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("gen writes connected samples with metadata") {
  TempDir dir;
  GenRequest req;
  req.n = 100;
  req.density = 0.1;
  req.count = 10;
  req.seed = 3;
  req.out_dir = dir.path() / "a";
  const auto files = cmd_gen(req);
  REQUIRE(files.size() == 10);
  for (const auto &f : files) {
    const Graph g = read_graph_file(f, GraphFormat::EdgeList).graph;
    CHECK(g.num_nodes() == 100);
    CHECK(is_connected(g));
    fs::path meta = f;
    meta.replace_extension(".meta");
    const auto kv = read_meta(meta);
    CHECK(kv.at("m") == std::to_string(g.num_edges()));
    CHECK(std::stod(kv.at("density")) == doctest::Approx(0.1).epsilon(0.3));
  }
  req.out_dir = dir.path() / "b";
  const auto again = cmd_gen(req);
  for (std::size_t i = 0; i < files.size(); ++i)
    CHECK(read_text_file(files[i]) == read_text_file(again[i]));

  req.density = 0.6;
  req.out_dir = dir.path() / "c";
  CHECK_THROWS(cmd_gen(req));
  CHECK_FALSE(fs::exists(req.out_dir));
}

TEST_CASE("encode summaries") {
  TempDir dir;
  const fs::path out = dir.path() / "f.wcnf";
  auto summary = cmd_encode(cycle(4), 2, Method::Paths, out);
  CHECK(summary.num_vars == 4);
  CHECK(summary.num_clauses == 6);
  CHECK(summary_line(summary).rfind("vars 4 clauses 6 ", 0) == 0);
  CHECK(parse_wcnf(read_text_file(out)) == encode_paths(cycle(4), 2).formula);
  CHECK(fs::exists(dir.path() / "f.wcnf.varmap"));

  summary = cmd_encode(path(4), 3, Method::Paths, out);
  CHECK(summary.num_vars == 5);
  CHECK(summary.num_clauses == 10);
  const VarMap vm = VarMap::from_sidecar(read_text_file(dir.path() / "f.wcnf.varmap"));
  CHECK(vm.find(PathAux{{1, 2}}) == 5u);

  for (int k = 1; k <= 3; ++k)
    for (Method m : {Method::Paths, Method::Reach}) {
      summary = cmd_encode(complete(5), k, m, out);
      CHECK(summary.num_vars == 5);
      CHECK(summary.num_clauses == 5);
    }
}

TEST_CASE("verify") {
  const Graph c5 = cycle(5);
  CHECK(format_verify(cmd_verify(c5, 2, {1, 2, 3})) == "yes diameter 2");
  CHECK(format_verify(cmd_verify(c5, 2, {1, 2, 3, 4})) == "no diameter 3");
  CHECK(format_verify(cmd_verify(c5, 2, {4})) == "yes diameter 0");
  CHECK(format_verify(cmd_verify(c5, 1, {1, 3})) == "no diameter inf");
  CHECK_THROWS_AS(cmd_verify(c5, 2, {0}), std::out_of_range);
  CHECK_THROWS_AS(cmd_verify(c5, 2, {6}), std::out_of_range);
}

TEST_CASE("omega cells and node lists") {
  CHECK(omega_cell(50, 50, true) == "50");
  CHECK(omega_cell(48, 52, false) == "48-52");
  CHECK(format_nodes(NodeSet{0, 4, 2}) == "1 3 5");
}

TEST_CASE("stats table") {
  TempDir dir;
  write_graph_file(dir.path() / "k5.txt", complete(5), GraphFormat::EdgeList);
  write_graph_file(dir.path() / "c7.graph", cycle(7), GraphFormat::Metis);
  write_text_file(dir.path() / "broken.txt", "1 x\n");
  StatsRequest req;
  req.dir = dir.path();
  req.time_limit = 60;
  std::ostringstream warnings;
  const auto rows = lines_of(cmd_stats(req, warnings));
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == "instance,n,m,density,omega_2,omega_3,omega_4");
  CHECK(rows[1] == "c7,7,7,0.3333,3,7,7");
  CHECK(rows[2] == "k5,5,10,1.0000,5,5,5");
  CHECK(warnings.str().find("broken.txt") != std::string::npos);
}

TEST_CASE("run CSV rows") {
  const KClubRun run = solve_kclub(cycle(5), 2, Method::Reach, {}, {60.0, {}});
  const RunRecord r = make_record("c5", cycle(5), 2, Method::Reach, {}, run);
  CHECK(to_csv_row(r).rfind("c5,5,5,0.5000,2,reach,internal,optimal,5,5,0.0000,", 0) == 0);
  CHECK(lines_of(run_csv_header())[0].find("total_seconds") != std::string::npos);
}

TEST_CASE("bench config parsing") {
  const BenchConfig cfg = parse_bench_config(
      "# comment\nworkers = 3\ntime_limit = 60\nk = 2,3\n"
      "[rand]\nn = 50\ndensity = 0.1\nndv = max\nsamples = 4\nseed = 9\n"
      "method = paths, reach\n"
      "[files]\nfiles = a.txt sub\nformat = metis\nsolver = external:rc2.py -vv\n",
      "/base");
  CHECK(cfg.workers == 3);
  REQUIRE(cfg.categories.size() == 2);
  const auto &r = cfg.categories[0];
  CHECK(r.name == "rand");
  CHECK(r.n == 50u);
  CHECK(r.ndv == Ndv::Max);
  CHECK(r.samples == 4);
  CHECK(r.ks == std::vector<int>{2, 3});
  CHECK(r.methods.size() == 2);
  CHECK(r.time_limit == 60.0);
  const auto &f = cfg.categories[1];
  CHECK(f.files == std::vector<fs::path>{"/base/a.txt", "/base/sub"});
  CHECK(f.format == GraphFormat::Metis);
  CHECK(f.solver.external);
  CHECK(f.methods == std::vector<Method>{Method::Paths});

  CHECK(parse_bench_config("").categories.empty());
  CHECK_THROWS_AS(parse_bench_config("[a]\nbogus = 1\n"), ParseError);
  CHECK_THROWS_AS(parse_bench_config("[a]\nn = 10\n"), ParseError);
  CHECK_THROWS_AS(parse_bench_config("[a]\n"), ParseError);
  CHECK_THROWS_AS(parse_bench_config("[a]\nn = x\ndensity = 0.1\n"), ParseError);
  CHECK_THROWS_AS(parse_bench_config("[a]\nworkers = 2\n"), ParseError);
  CHECK_THROWS_AS(parse_bench_config("k 2\n"), ParseError);
}

TEST_CASE("shipped desk presets parse") {
  for (const char *name : {"desk60.conf", "desk300.conf"}) {
    CAPTURE(name);
    std::ifstream in(fs::path(KCLUB_BENCH_DIR) / name);
    REQUIRE(in);
    std::stringstream text;
    text << in.rdbuf();
    const BenchConfig cfg = parse_bench_config(text.str(), KCLUB_BENCH_DIR);
    CHECK(cfg.categories.size() == 4);
    for (const auto &c : cfg.categories) {
      CHECK(c.time_limit <= 300.0);
      CHECK(c.n.has_value());
      CHECK(c.samples == 10);
    }
  }
}

TEST_CASE("empty config gives an empty table") {
  const BenchOutput out = run_bench(parse_bench_config("# nothing\n"));
  CHECK(out.runs.empty());
  CHECK(lines_of(summary_csv(out.summary)).size() == 1);
}

TEST_CASE("timeouts count at the limit") {
  std::vector<BenchRun> runs;
  for (int i = 0; i < 10; ++i) {
    BenchRun r;
    r.category = "hard";
    r.time_limit = 60;
    r.record.k = 3;
    r.record.solver = "internal";
    r.record.status = SolveStatus::Feasible;
    r.record.omega = 20 + i % 2;
    r.record.upper_bound = 40;
    r.record.gap = (40.0 - r.record.omega) / 40.0;
    r.record.total_seconds = 61.2;
    runs.push_back(r);
  }
  const auto rows = summarize(runs);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].unsolved == 10);
  CHECK(rows[0].mean_time == 60.0);
  CHECK(rows[0].mean_omega == doctest::Approx(20.5));
  CHECK(rows[0].mean_gap == doctest::Approx(19.5 / 40));
  CHECK(lines_of(summary_csv(rows))[1] ==
        "hard,3,paths,internal,10,10,20.50,60.00,0.4875,60.00(10)");
}

TEST_CASE("bench over generated samples is reproducible") {
  const std::string text = "workers = 4\n[r]\nn = 30\ndensity = 0.15\nsamples = 6\n"
                           "seed = 2\nk = 2,3\nmethod = paths,reach\ntime_limit = 60\n";
  const BenchOutput a = run_bench(parse_bench_config(text));
  const BenchOutput b = run_bench(parse_bench_config(text));
  REQUIRE(a.runs.size() == 24);
  for (std::size_t i = 0; i < a.runs.size(); ++i) {
    CHECK(a.runs[i].record.instance == b.runs[i].record.instance);
    CHECK(a.runs[i].record.omega == b.runs[i].record.omega);
    CHECK(a.runs[i].record.status == SolveStatus::Optimal);
  }
  // Both methods agree on every instance.
  for (std::size_t i = 0; i + 1 < a.runs.size(); i += 2)
    CHECK(a.runs[i].record.omega == a.runs[i + 1].record.omega);
  CHECK(a.summary.size() == 4);
}

}
