#include "kclub/commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "kclub/error.hpp"

namespace kclub {

namespace fs = std::filesystem;

namespace {

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

std::string csv_field(const std::string &s) {
  if (s.find_first_of(",\"\n") == std::string::npos)
    return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"')
      out += '"';
    out += c;
  }
  return out + "\"";
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos)
    return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!cur.empty())
        out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty())
    out.push_back(std::move(cur));
  return out;
}

// Regular files of a directory sorted by name, or the path itself.
std::vector<fs::path> expand(const fs::path &p) {
  if (!fs::is_directory(p))
    return {p};
  std::vector<fs::path> out;
  for (const auto &entry : fs::directory_iterator(p))
    if (entry.is_regular_file() && entry.path().extension() != ".meta")
      out.push_back(entry.path());
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace

// ---- records -------------------------------------------------------------

RunRecord make_record(std::string instance, const Graph &g, int k,
                      Method method, const SolverChoice &solver,
                      const KClubRun &run) {
  RunRecord r;
  r.instance = std::move(instance);
  r.n = g.num_nodes();
  r.m = g.num_edges();
  r.density = g.num_nodes() >= 2 ? density(g) : 0.0;
  r.k = k;
  r.method = method;
  r.solver = solver_label(solver);
  r.status = run.status;
  r.omega = run.lower_bound;
  r.upper_bound = run.upper_bound;
  r.gap = run.gap;
  r.encode_seconds = run.encode_seconds;
  r.solve_seconds = run.solve_seconds;
  r.total_seconds = run.total_seconds;
  return r;
}

std::string run_csv_header() {
  return "instance,n,m,density,k,method,solver,status,omega,upper_bound,gap,"
         "encode_seconds,solve_seconds,total_seconds";
}

std::string to_csv_row(const RunRecord &r) {
  std::ostringstream out;
  out << csv_field(r.instance) << ',' << r.n << ',' << r.m << ','
      << fixed(r.density, 4) << ',' << r.k << ',' << method_name(r.method)
      << ',' << r.solver << ',' << status_name(r.status) << ',' << r.omega
      << ',' << r.upper_bound << ',' << fixed(r.gap, 4) << ','
      << fixed(r.encode_seconds, 3) << ',' << fixed(r.solve_seconds, 3) << ','
      << fixed(r.total_seconds, 3);
  return out.str();
}

std::string omega_cell(std::size_t lower, std::size_t upper, bool optimal) {
  if (optimal)
    return std::to_string(lower);
  return std::to_string(lower) + "-" + std::to_string(upper);
}

// ---- gen -----------------------------------------------------------------

GeneratedGraph generate_sample(const GenRequest &req, std::size_t i) {
  const GenParams p = ndv_preset(req.n, req.density, req.ndv, req.seed + i);
  return generate_connected(p, req.max_attempts);
}

std::vector<fs::path> cmd_gen(const GenRequest &req) {
  // Validate before touching the file system.
  validate(ndv_preset(req.n, req.density, req.ndv, req.seed));
  fs::create_directories(req.out_dir);
  std::vector<fs::path> written;
  const std::string ndv = req.ndv == Ndv::Min ? "min" : "max";
  for (std::size_t i = 0; i < req.count; ++i) {
    const GenParams p = ndv_preset(req.n, req.density, req.ndv, req.seed + i);
    const GeneratedGraph sample = generate_sample(req, i);
    char stem[128];
    std::snprintf(stem, sizeof stem, "n%zu_d%s_%s_%03zu", req.n,
                  fixed(req.density, 3).c_str(), ndv.c_str(), i + 1);
    const fs::path graph_path = req.out_dir / (std::string(stem) + ".txt");
    write_graph_file(graph_path, sample.graph, GraphFormat::EdgeList);
    write_text_file(req.out_dir / (std::string(stem) + ".meta"),
                    generation_metadata(p, sample));
    written.push_back(graph_path);
  }
  return written;
}

// ---- encode --------------------------------------------------------------

std::string summary_line(const EncodeSummary &s) {
  return "vars " + std::to_string(s.num_vars) + " clauses " +
         std::to_string(s.num_clauses) + " seconds " + fixed(s.seconds, 3);
}

EncodeSummary cmd_encode(const Graph &g, int k, Method method,
                         const fs::path &out) {
  const auto started = std::chrono::steady_clock::now();
  const Encoding enc = encode(g, k, method);
  EncodeSummary s;
  s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                            started)
                  .count();
  s.num_vars = enc.formula.num_vars();
  s.num_clauses = enc.formula.num_clauses();
  write_text_file(out, write_wcnf(enc.formula));
  fs::path sidecar = out;
  sidecar += ".varmap";
  write_text_file(sidecar, enc.varmap.to_sidecar());
  return s;
}

// ---- verify --------------------------------------------------------------

VerifyReport cmd_verify(const Graph &g, int k,
                        const std::vector<std::int64_t> &labels) {
  if (k < 1)
    throw std::invalid_argument("k must be positive");
  if (labels.empty())
    throw std::invalid_argument("no nodes given");
  std::vector<Node> nodes;
  for (std::int64_t label : labels) {
    if (label < 1 || static_cast<std::uint64_t>(label) > g.num_nodes())
      throw std::out_of_range("node " + std::to_string(label) +
                              " is outside 1.." +
                              std::to_string(g.num_nodes()));
    nodes.push_back(static_cast<Node>(label - 1));
  }
  const NodeSet s(std::move(nodes));
  return {is_k_club(g, s, k), induced_diameter(g, s)};
}

std::string format_verify(const VerifyReport &r) {
  return std::string(r.is_club ? "yes" : "no") + " diameter " +
         (r.diameter ? std::to_string(*r.diameter) : "inf");
}

std::string format_nodes(const NodeSet &s) {
  std::string out;
  for (Node v : s) {
    if (!out.empty())
      out += ' ';
    out += std::to_string(v + 1);
  }
  return out;
}

// ---- stats ---------------------------------------------------------------

std::string cmd_stats(const StatsRequest &req, std::ostream &warnings) {
  if (!fs::is_directory(req.dir))
    throw std::invalid_argument("not a directory: " + req.dir.string());
  std::ostringstream out;
  out << "instance,n,m,density";
  for (int k : req.ks)
    out << ",omega_" << k;
  out << '\n';
  const SolveBudget budget{req.time_limit, {}};
  for (const fs::path &file : expand(req.dir)) {
    Graph g;
    try {
      const GraphFormat fmt = req.format.value_or(format_from_extension(file));
      g = read_graph_file(file, fmt).graph;
      if (g.num_nodes() < 2)
        throw std::invalid_argument("fewer than two nodes");
    } catch (const std::exception &e) {
      warnings << "warning: skipping " << file.string() << ": " << e.what()
               << '\n';
      continue;
    }
    out << csv_field(file.stem().string()) << ',' << g.num_nodes() << ','
        << g.num_edges() << ',' << fixed(density(g), 4);
    for (int k : req.ks) {
      const KClubRun run = solve_kclub(g, k, req.method, req.solver, budget);
      out << ','
          << omega_cell(run.lower_bound, run.upper_bound,
                        run.status == SolveStatus::Optimal);
    }
    out << '\n';
  }
  return out.str();
}

// ---- bench config --------------------------------------------------------

BenchConfig parse_bench_config(std::string_view text, const fs::path &base_dir) {
  BenchConfig cfg;
  BenchCategory defaults;
  defaults.name = "default";
  BenchCategory *current = &defaults;
  std::size_t line_no = 0;

  auto number = [&](std::string_view v, auto &target) {
    std::istringstream in{std::string(v)};
    std::remove_reference_t<decltype(target)> value{};
    char extra;
    if (!(in >> value) || (in >> extra))
      throw ParseError(line_no, "bad number '" + std::string(v) + "'");
    target = value;
  };

  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos)
      end = text.size();
    const std::string_view line = trim(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#')
      continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3)
        throw ParseError(line_no, "malformed category header");
      cfg.categories.push_back(defaults);
      cfg.categories.back().name = std::string(trim(line.substr(1, line.size() - 2)));
      current = &cfg.categories.back();
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ParseError(line_no, "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (value.empty())
      throw ParseError(line_no, "empty value for '" + key + "'");
    try {
      if (key == "workers") {
        if (current != &defaults)
          throw ParseError(line_no, "workers is a global key");
        number(value, cfg.workers);
        if (cfg.workers == 0)
          throw ParseError(line_no, "workers must be positive");
      } else if (key == "n") {
        std::size_t n = 0;
        number(value, n);
        current->n = n;
      } else if (key == "density") {
        double d = 0;
        number(value, d);
        current->density = d;
      } else if (key == "ndv") {
        current->ndv = parse_ndv(std::string(value));
      } else if (key == "samples") {
        number(value, current->samples);
      } else if (key == "seed") {
        number(value, current->seed);
      } else if (key == "max_attempts") {
        number(value, current->max_attempts);
      } else if (key == "files") {
        current->files.clear();
        for (const auto &p : split_list(value))
          current->files.push_back(fs::path(p).is_absolute() ? fs::path(p)
                                                             : base_dir / p);
      } else if (key == "format") {
        current->format = parse_format_name(value);
      } else if (key == "k") {
        current->ks.clear();
        for (const auto &item : split_list(value)) {
          int k = 0;
          number(item, k);
          if (k < 1)
            throw ParseError(line_no, "k must be positive");
          current->ks.push_back(k);
        }
      } else if (key == "method") {
        current->methods.clear();
        for (const auto &item : split_list(value))
          current->methods.push_back(parse_method(item));
      } else if (key == "solver") {
        current->solver = parse_solver_choice(value);
      } else if (key == "time_limit") {
        number(value, current->time_limit);
        if (!(current->time_limit > 0))
          throw ParseError(line_no, "time_limit must be positive");
      } else {
        throw ParseError(line_no, "unknown key '" + key + "'");
      }
    } catch (const ParseError &) {
      throw;
    } catch (const std::invalid_argument &e) {
      throw ParseError(line_no, e.what());
    }
  }

  for (const BenchCategory &c : cfg.categories) {
    const bool generated = c.n || c.density;
    if (generated && !c.files.empty())
      throw ParseError(line_no, "category '" + c.name +
                                    "' mixes files with generation keys");
    if (generated && !(c.n && c.density))
      throw ParseError(line_no, "category '" + c.name +
                                    "' needs both n and density");
    if (!generated && c.files.empty())
      throw ParseError(line_no, "category '" + c.name + "' has no instances");
  }
  return cfg;
}

// ---- bench run -----------------------------------------------------------

std::string bench_csv_header() { return "category," + run_csv_header(); }

std::string to_csv_row(const BenchRun &r) {
  return csv_field(r.category) + "," + to_csv_row(r.record);
}

std::vector<CategorySummary> summarize(const std::vector<BenchRun> &runs) {
  std::vector<CategorySummary> rows;
  std::map<std::tuple<std::string, int, Method, std::string>, std::size_t> at;
  for (const BenchRun &run : runs) {
    const RunRecord &r = run.record;
    const auto key = std::make_tuple(run.category, r.k, r.method, r.solver);
    auto [it, fresh] = at.emplace(key, rows.size());
    if (fresh) {
      CategorySummary s;
      s.category = run.category;
      s.k = r.k;
      s.method = r.method;
      s.solver = r.solver;
      rows.push_back(s);
    }
    CategorySummary &s = rows[it->second];
    const bool solved = r.status == SolveStatus::Optimal;
    ++s.runs;
    s.unsolved += solved ? 0 : 1;
    s.mean_omega += static_cast<double>(r.omega);
    s.mean_time += solved ? r.total_seconds : run.time_limit;
    s.mean_gap += r.gap;
  }
  for (CategorySummary &s : rows) {
    const double runs_d = static_cast<double>(s.runs);
    s.mean_omega /= runs_d;
    s.mean_time /= runs_d;
    s.mean_gap /= runs_d;
  }
  return rows;
}

std::string summary_csv(const std::vector<CategorySummary> &rows) {
  std::ostringstream out;
  out << "category,k,method,solver,runs,unsolved,mean_omega,mean_time,"
         "mean_gap,time\n";
  for (const CategorySummary &s : rows) {
    std::string time = fixed(s.mean_time, 2);
    if (s.unsolved > 0)
      time += "(" + std::to_string(s.unsolved) + ")";
    out << csv_field(s.category) << ',' << s.k << ',' << method_name(s.method)
        << ',' << s.solver << ',' << s.runs << ',' << s.unsolved << ','
        << fixed(s.mean_omega, 2) << ',' << fixed(s.mean_time, 2) << ','
        << fixed(s.mean_gap, 4) << ',' << time << '\n';
  }
  return out.str();
}

BenchOutput run_bench(const BenchConfig &cfg, std::ostream *progress) {
  struct Instance {
    std::size_t category;
    std::string name;
    Graph graph;
  };
  std::vector<Instance> instances;
  for (std::size_t c = 0; c < cfg.categories.size(); ++c) {
    const BenchCategory &cat = cfg.categories[c];
    if (cat.n) {
      GenRequest req;
      req.n = *cat.n;
      req.density = *cat.density;
      req.ndv = cat.ndv;
      req.seed = cat.seed;
      req.max_attempts = cat.max_attempts;
      for (std::size_t i = 0; i < cat.samples; ++i)
        instances.push_back({c, cat.name + "/" + std::to_string(i + 1),
                             generate_sample(req, i).graph});
    } else {
      for (const fs::path &entry : cat.files)
        for (const fs::path &file : expand(entry)) {
          const GraphFormat fmt =
              cat.format.value_or(format_from_extension(file));
          instances.push_back(
              {c, file.stem().string(), read_graph_file(file, fmt).graph});
        }
    }
  }

  struct Task {
    const Instance *instance;
    int k;
    Method method;
  };
  std::vector<Task> tasks;
  for (const Instance &inst : instances) {
    const BenchCategory &cat = cfg.categories[inst.category];
    for (int k : cat.ks)
      for (Method m : cat.methods)
        tasks.push_back({&inst, k, m});
  }

  BenchOutput out;
  out.runs.resize(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  std::mutex progress_mutex;
  auto worker = [&] {
    for (std::size_t t; (t = next.fetch_add(1)) < tasks.size();) {
      const Task &task = tasks[t];
      const BenchCategory &cat = cfg.categories[task.instance->category];
      try {
        const KClubRun run =
            solve_kclub(task.instance->graph, task.k, task.method, cat.solver,
                        SolveBudget{cat.time_limit, {}});
        BenchRun &row = out.runs[t];
        row.category = cat.name;
        row.time_limit = cat.time_limit;
        row.record = make_record(task.instance->name, task.instance->graph,
                                 task.k, task.method, cat.solver, run);
        if (progress) {
          std::lock_guard lock(progress_mutex);
          *progress << to_csv_row(row) << '\n';
        }
      } catch (...) {
        errors[t] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(cfg.workers, 1, 256);
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < std::min(threads, tasks.size()); ++i)
    pool.emplace_back(worker);
  worker();
  for (auto &th : pool)
    th.join();
  for (const auto &e : errors)
    if (e)
      std::rethrow_exception(e);
  out.summary = summarize(out.runs);
  return out;
}

} // namespace kclub
