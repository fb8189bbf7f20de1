#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kclub/encode.hpp"
#include "kclub/graph_io.hpp"
#include "kclub/pipeline.hpp"
#include "kclub/randgen.hpp"

namespace kclub {

inline constexpr double kDefaultTimeLimit = 3600.0;

/// One solved (instance, k, method, solver) cell. Columns of the run CSV.
struct RunRecord {
  std::string instance;
  std::size_t n = 0;
  std::size_t m = 0;
  double density = 0.0;
  int k = 0;
  Method method = Method::Paths;
  std::string solver;
  SolveStatus status = SolveStatus::Unknown;
  std::size_t omega = 0; ///< best verified k-club size (the lower bound)
  std::size_t upper_bound = 0;
  double gap = 0.0;
  double encode_seconds = 0.0;
  double solve_seconds = 0.0;
  double total_seconds = 0.0;
};

RunRecord make_record(std::string instance, const Graph &g, int k,
                      Method method, const SolverChoice &solver,
                      const KClubRun &run);

/// instance,n,m,density,k,method,solver,status,omega,upper_bound,gap,
/// encode_seconds,solve_seconds,total_seconds
std::string run_csv_header();
std::string to_csv_row(const RunRecord &r);

/// The optimum when proven, otherwise "lb-ub".
std::string omega_cell(std::size_t lower, std::size_t upper, bool optimal);

// ---- gen -----------------------------------------------------------------

struct GenRequest {
  std::size_t n = 0;
  double density = 0.0;
  Ndv ndv = Ndv::Min;
  std::size_t count = 1;
  std::uint64_t seed = 0; ///< sample i uses seed + i
  std::filesystem::path out_dir;
  std::size_t max_attempts = kDefaultMaxAttempts;
};

/// Connected sample i of a request, deterministic in (request, i).
GeneratedGraph generate_sample(const GenRequest &req, std::size_t i);

/// Writes `<stem>.txt` (edge list) and `<stem>.meta` per sample; returns
/// the graph paths.
std::vector<std::filesystem::path> cmd_gen(const GenRequest &req);

// ---- encode --------------------------------------------------------------

struct EncodeSummary {
  std::size_t num_vars = 0;
  std::size_t num_clauses = 0;
  double seconds = 0.0;
};

std::string summary_line(const EncodeSummary &s);

/// Writes the WCNF to `out` and the variable map to `out` + ".varmap".
EncodeSummary cmd_encode(const Graph &g, int k, Method method,
                         const std::filesystem::path &out);

// ---- solve / verify ------------------------------------------------------

/// Labels are 1-based as on the command line.
struct VerifyReport {
  bool is_club = false;
  std::optional<int> diameter; ///< nullopt when G[S] is disconnected
};

/// Throws std::out_of_range for labels outside 1..n.
VerifyReport cmd_verify(const Graph &g, int k,
                        const std::vector<std::int64_t> &labels);
std::string format_verify(const VerifyReport &r);

/// Space separated 1-based labels.
std::string format_nodes(const NodeSet &s);

// ---- stats ---------------------------------------------------------------

struct StatsRequest {
  std::filesystem::path dir;
  std::vector<int> ks{2, 3, 4};
  Method method = Method::Paths;
  SolverChoice solver;
  double time_limit = kDefaultTimeLimit;
  std::optional<GraphFormat> format; ///< default: by file extension
};

/// CSV with one row per readable graph file in `dir` (sorted by name):
/// instance,n,m,density,omega_<k>... Unreadable files are reported on
/// `warnings` and skipped.
std::string cmd_stats(const StatsRequest &req, std::ostream &warnings);

// ---- bench ---------------------------------------------------------------

struct BenchCategory {
  std::string name;
  // generated samples
  std::optional<std::size_t> n;
  std::optional<double> density;
  Ndv ndv = Ndv::Min;
  std::size_t samples = 10;
  std::uint64_t seed = 0;
  std::size_t max_attempts = kDefaultMaxAttempts;
  // or instance files / directories
  std::vector<std::filesystem::path> files;
  std::optional<GraphFormat> format;

  std::vector<int> ks{2};
  std::vector<Method> methods{Method::Paths};
  SolverChoice solver;
  double time_limit = kDefaultTimeLimit;
};

struct BenchConfig {
  std::size_t workers = 1;
  std::vector<BenchCategory> categories;
};

/// Line-oriented config: `key = value` lines, `[name]` opens a category,
/// '#' starts a comment line. Keys before the first category are defaults
/// for every category; `workers` is global only. Relative paths resolve
/// against `base_dir`. Throws ParseError.
BenchConfig parse_bench_config(std::string_view text,
                               const std::filesystem::path &base_dir = {});

struct CategorySummary {
  std::string category;
  int k = 0;
  Method method = Method::Paths;
  std::string solver;
  std::size_t runs = 0;
  std::size_t unsolved = 0;
  double mean_omega = 0.0;
  double mean_time = 0.0; ///< unsolved runs count at the time limit
  double mean_gap = 0.0;
};

struct BenchRun {
  std::string category;
  double time_limit = kDefaultTimeLimit;
  RunRecord record;
};

/// category, then the run CSV columns.
std::string bench_csv_header();
std::string to_csv_row(const BenchRun &r);

/// Groups by (category, k, method, solver) in first-appearance order.
std::vector<CategorySummary> summarize(const std::vector<BenchRun> &runs);

/// category,k,method,solver,runs,unsolved,mean_omega,mean_time,mean_gap,time
/// where time is "<mean_time>(<unsolved>)" when some runs are unsolved.
std::string summary_csv(const std::vector<CategorySummary> &rows);

struct BenchOutput {
  std::vector<BenchRun> runs;
  std::vector<CategorySummary> summary;
};

/// Runs every cell of the config on up to `workers` threads. Rows come back
/// in config order regardless of completion order. `progress`, if given,
/// receives one line per finished run.
BenchOutput run_bench(const BenchConfig &cfg, std::ostream *progress = nullptr);

} // namespace kclub
