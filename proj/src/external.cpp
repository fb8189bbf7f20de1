#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <filesystem>
#include <stdexcept>

#include "kclub/error.hpp"
#include "kclub/graph_io.hpp"
#include "kclub/maxsat.hpp"

namespace kclub {

namespace {

class TempFile {
public:
  explicit TempFile(std::string_view contents) {
    static std::atomic<unsigned> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("kclub-" + std::to_string(::getpid()) + "-" +
             std::to_string(counter++) + ".wcnf");
    write_text_file(path_, contents);
  }
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
  TempFile(const TempFile &) = delete;
  TempFile &operator=(const TempFile &) = delete;

  const std::filesystem::path &path() const { return path_; }

private:
  std::filesystem::path path_;
};

struct ChildOutput {
  std::string stdout_text;
  int exit_status = 0; // raw waitpid status
  bool timed_out = false;
};

// Runs argv with stdout captured. The child gets its own process group so
// that a timeout kills everything it spawned; the child is always reaped.
ChildOutput run_child(const std::vector<std::string> &argv, double seconds) {
  int fds[2];
  if (::pipe(fds) != 0)
    throw SolverError(std::string("pipe failed: ") + std::strerror(errno));

  const pid_t pid = ::fork();
  if (pid < 0) {
    ::close(fds[0]);
    ::close(fds[1]);
    throw SolverError(std::string("fork failed: ") + std::strerror(errno));
  }
  if (pid == 0) {
    ::setpgid(0, 0);
    ::dup2(fds[1], STDOUT_FILENO);
    const int devnull = ::open("/dev/null", O_RDWR);
    if (devnull >= 0) {
      ::dup2(devnull, STDIN_FILENO);
      ::dup2(devnull, STDERR_FILENO);
    }
    ::close(fds[0]);
    ::close(fds[1]);
    std::vector<char *> args;
    for (const auto &a : argv)
      args.push_back(const_cast<char *>(a.c_str()));
    args.push_back(nullptr);
    ::execvp(args[0], args.data());
    ::_exit(127);
  }
  ::setpgid(pid, pid);
  ::close(fds[1]);

  ChildOutput out;
  using clock = std::chrono::steady_clock;
  const auto deadline =
      clock::now() + std::chrono::duration_cast<clock::duration>(
                         std::chrono::duration<double>(seconds));
  auto kill_deadline = clock::time_point::max();
  bool term_sent = false;
  char buf[65536];
  for (;;) {
    const auto now = clock::now();
    if (!term_sent && now >= deadline) {
      out.timed_out = true;
      ::kill(-pid, SIGTERM);
      term_sent = true;
      kill_deadline = now + std::chrono::seconds(2);
    }
    if (term_sent && now >= kill_deadline) {
      ::kill(-pid, SIGKILL);
      kill_deadline = clock::time_point::max();
    }
    const auto until = term_sent ? kill_deadline : deadline;
    int wait_ms = 100;
    if (until != clock::time_point::max())
      wait_ms = static_cast<int>(std::clamp<long long>(
          std::chrono::duration_cast<std::chrono::milliseconds>(until - now)
                  .count() +
              1,
          1, 100));
    pollfd pfd{fds[0], POLLIN, 0};
    const int ready = ::poll(&pfd, 1, wait_ms);
    if (ready < 0 && errno != EINTR)
      break;
    if (ready > 0) {
      const ssize_t got = ::read(fds[0], buf, sizeof buf);
      if (got > 0)
        out.stdout_text.append(buf, static_cast<std::size_t>(got));
      else if (got == 0 || errno != EINTR)
        break;
    }
  }
  ::close(fds[0]);
  // stdout is closed but the child may still be running.
  for (;;) {
    const pid_t done = ::waitpid(pid, &out.exit_status, WNOHANG);
    if (done == pid || (done < 0 && errno != EINTR))
      break;
    if (clock::now() >= deadline) {
      out.timed_out = true;
      ::kill(-pid, SIGKILL);
      while (::waitpid(pid, &out.exit_status, 0) < 0 && errno == EINTR) {
      }
      break;
    }
    ::usleep(5000);
  }
  if (out.timed_out)
    ::kill(-pid, SIGKILL);
  return out;
}

} // namespace

SolveResult solve_external(const WcnfFormula &f,
                           const std::vector<std::string> &command,
                           const SolveBudget &budget) {
  if (command.empty())
    throw std::invalid_argument("empty solver command");
  if (!(budget.time_limit > 0.0))
    throw std::invalid_argument("time limit must be positive");
  f.validate();
  const auto started = std::chrono::steady_clock::now();
  TempFile wcnf(write_wcnf(f));
  std::vector<std::string> argv = command;
  argv.push_back(wcnf.path().string());
  ChildOutput child = run_child(argv, budget.time_limit);

  if (!child.timed_out && WIFEXITED(child.exit_status) &&
      WEXITSTATUS(child.exit_status) == 127 && child.stdout_text.empty())
    throw SolverError("could not run solver '" + command[0] + "'");

  SolverOutput parsed;
  try {
    parsed = parse_solver_output(child.stdout_text, f);
  } catch (const SolverError &) {
    // A killed solver may not get to print its status line; anything else
    // (including an invalid assignment) is a genuine failure.
    if (!child.timed_out ||
        child.stdout_text.find("\ns ") != std::string::npos ||
        child.stdout_text.rfind("s ", 0) == 0)
      throw;
    parsed.status = SolverStatus::Unknown;
  }

  SolveResult r;
  r.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                            started)
                  .count();
  const std::size_t num_soft = f.soft().size();
  r.upper_bound = num_soft;
  if (parsed.status == SolverStatus::Unsatisfiable)
    throw SolverError("solver reports unsatisfiable hard clauses");
  if (parsed.assignment) {
    r.lower_bound = count_satisfied_soft(f, *parsed.assignment);
    r.best_assignment = parsed.assignment;
    r.status = SolveStatus::Feasible;
    if (parsed.status == SolverStatus::Optimum) {
      if (parsed.cost && *parsed.cost != num_soft - r.lower_bound)
        throw SolverError("reported cost " + std::to_string(*parsed.cost) +
                          " disagrees with the returned assignment");
      r.status = SolveStatus::Optimal;
      r.upper_bound = r.lower_bound;
    }
  } else if (parsed.status == SolverStatus::Optimum) {
    throw SolverError("solver claims an optimum but prints no assignment");
  }
  return r;
}

} // namespace kclub
