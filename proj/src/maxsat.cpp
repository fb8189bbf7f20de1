#include "kclub/maxsat.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <numeric>
#include <stdexcept>

#include "kclub/error.hpp"

namespace kclub {

std::string_view status_name(SolveStatus s) {
  switch (s) {
  case SolveStatus::Optimal:
    return "optimal";
  case SolveStatus::Feasible:
    return "feasible";
  case SolveStatus::Unknown:
    return "unknown";
  }
  return "unknown";
}

double optimality_gap(const SolveResult &r) {
  if (r.upper_bound == 0)
    throw std::domain_error("optimality gap undefined for upper bound 0");
  if (r.status == SolveStatus::Optimal)
    return 0.0;
  const auto ub = static_cast<double>(r.upper_bound);
  return (ub - static_cast<double>(r.lower_bound)) / ub;
}

namespace {

// Literal index: 2 * (var - 1) + (negative ? 1 : 0).
using LitIdx = std::uint32_t;
constexpr LitIdx to_idx(Lit l) {
  return 2 * (l.var() - 1) + (l.negative() ? 1u : 0u);
}

enum : std::int8_t { kFalse = 0, kTrue = 1, kOpen = -1 };

class Engine {
public:
  Engine(const WcnfFormula &f, const SolveBudget &budget,
         const EngineHints &hints);

  SolveResult run();

private:
  struct Decision {
    std::size_t trail_start;
    LitIdx lit;
    bool flipped;
    std::size_t bound; // bound of the node the decision was taken at
  };

  // A hard clause with exactly two negative soft literals. Once its other
  // literals are all false it forbids the two soft variables together.
  struct ConflictClause {
    std::uint32_t a, b; // soft positions
    std::uint32_t alive; // other literals not currently false
  };

  std::int8_t lit_value(LitIdx p) const {
    const std::int8_t v = value_[p >> 1];
    return v == kOpen ? static_cast<std::int8_t>(kOpen) : static_cast<std::int8_t>(v ^ (p & 1));
  }

  void assign(LitIdx p);
  void unassign_to(std::size_t trail_size);
  bool propagate();
  bool backtrack();
  std::size_t bound();
  LitIdx pick_branch() const;
  void record_leaf();
  bool out_of_budget();
  void build_conflict_index(const WcnfFormula &f);

  const std::size_t num_vars_;
  const SolveBudget budget_;
  const std::chrono::steady_clock::time_point started_;

  std::vector<LitIdx> lits_;
  std::vector<std::uint32_t> start_;
  std::vector<std::vector<std::uint32_t>> watches_;
  std::vector<LitIdx> units_;
  bool empty_clause_ = false;

  std::vector<std::int32_t> soft_pos_; // per var, -1 if not soft
  std::vector<Var> soft_vars_;
  std::vector<Var> order_;
  std::vector<char> first_phase_true_;

  std::vector<ConflictClause> conflicts_;
  std::vector<std::vector<std::uint32_t>> other_occ_; // per literal index

  std::vector<std::int8_t> value_;
  std::vector<LitIdx> trail_;
  std::size_t qhead_ = 0;
  std::vector<Decision> decisions_;
  std::size_t sat_soft_ = 0;
  std::size_t open_soft_ = 0;

  std::optional<Assignment> initial_;
  long best_ = -1;
  Assignment best_assignment_;
  std::uint64_t nodes_ = 0;
  std::optional<std::size_t> root_bound_;

  // scratch for the clique cover
  std::vector<std::int32_t> local_;
  std::vector<std::uint32_t> open_list_;
  std::vector<std::uint64_t> rows_;
  std::vector<std::uint64_t> cover_;
  std::vector<std::uint32_t> degree_;
};

Engine::Engine(const WcnfFormula &f, const SolveBudget &budget,
               const EngineHints &hints)
    : num_vars_(f.num_vars()), budget_(budget),
      started_(std::chrono::steady_clock::now()),
      watches_(2 * f.num_vars()), soft_pos_(f.num_vars(), -1),
      first_phase_true_(f.num_vars(), 0), other_occ_(2 * f.num_vars()),
      value_(f.num_vars(), kOpen), initial_(hints.initial) {
  std::vector<double> occurrences(num_vars_, 0.0);
  start_.push_back(0);
  for (const auto &c : f.hard()) {
    if (c.size() == 0) {
      empty_clause_ = true;
      continue;
    }
    if (c.size() == 1) {
      units_.push_back(to_idx(c.lits()[0]));
      continue;
    }
    const auto id = static_cast<std::uint32_t>(start_.size() - 1);
    for (Lit l : c) {
      lits_.push_back(to_idx(l));
      occurrences[l.var() - 1] += 1.0;
    }
    start_.push_back(static_cast<std::uint32_t>(lits_.size()));
    watches_[lits_[start_[id]]].push_back(id);
    watches_[lits_[start_[id] + 1]].push_back(id);
  }
  for (Var v : f.soft()) {
    soft_pos_[v - 1] = static_cast<std::int32_t>(soft_vars_.size());
    soft_vars_.push_back(v);
    first_phase_true_[v - 1] = 1;
  }
  open_soft_ = soft_vars_.size();

  const auto &prio =
      hints.priority.size() == num_vars_ ? hints.priority : occurrences;
  order_.resize(num_vars_);
  std::iota(order_.begin(), order_.end(), Var{1});
  std::stable_sort(order_.begin(), order_.end(), [&](Var a, Var b) {
    const bool sa = soft_pos_[a - 1] >= 0, sb = soft_pos_[b - 1] >= 0;
    if (sa != sb)
      return sa;
    if (!sa)
      return false;
    return prio[a - 1] > prio[b - 1];
  });
  build_conflict_index(f);
  local_.assign(soft_vars_.size(), -1);
}

void Engine::build_conflict_index(const WcnfFormula &f) {
  for (const auto &c : f.hard()) {
    std::uint32_t found = 0;
    std::uint32_t pos[2] = {0, 0};
    for (Lit l : c)
      if (l.negative() && soft_pos_[l.var() - 1] >= 0) {
        if (found < 2)
          pos[found] = static_cast<std::uint32_t>(soft_pos_[l.var() - 1]);
        ++found;
      }
    if (found != 2)
      continue;
    const auto id = static_cast<std::uint32_t>(conflicts_.size());
    conflicts_.push_back({pos[0], pos[1],
                          static_cast<std::uint32_t>(c.size() - 2)});
    for (Lit l : c)
      if (!(l.negative() && soft_pos_[l.var() - 1] >= 0))
        other_occ_[to_idx(l)].push_back(id);
  }
}

void Engine::assign(LitIdx p) {
  const std::size_t var = p >> 1;
  value_[var] = (p & 1) ? kFalse : kTrue;
  trail_.push_back(p);
  if (soft_pos_[var] >= 0) {
    --open_soft_;
    if (value_[var] == kTrue)
      ++sat_soft_;
  }
  for (std::uint32_t id : other_occ_[p ^ 1])
    --conflicts_[id].alive;
}

void Engine::unassign_to(std::size_t trail_size) {
  while (trail_.size() > trail_size) {
    const LitIdx p = trail_.back();
    trail_.pop_back();
    const std::size_t var = p >> 1;
    if (soft_pos_[var] >= 0) {
      ++open_soft_;
      if (value_[var] == kTrue)
        --sat_soft_;
    }
    value_[var] = kOpen;
    for (std::uint32_t id : other_occ_[p ^ 1])
      ++conflicts_[id].alive;
  }
  qhead_ = trail_.size();
}

bool Engine::propagate() {
  while (qhead_ < trail_.size()) {
    const LitIdx falsified = trail_[qhead_++] ^ 1;
    auto &ws = watches_[falsified];
    std::size_t i = 0, j = 0;
    while (i < ws.size()) {
      const std::uint32_t c = ws[i++];
      LitIdx *cl = &lits_[start_[c]];
      const std::size_t len = start_[c + 1] - start_[c];
      if (cl[0] == falsified)
        std::swap(cl[0], cl[1]);
      if (lit_value(cl[0]) == kTrue) {
        ws[j++] = c;
        continue;
      }
      bool moved = false;
      for (std::size_t t = 2; t < len; ++t)
        if (lit_value(cl[t]) != kFalse) {
          std::swap(cl[1], cl[t]);
          watches_[cl[1]].push_back(c);
          moved = true;
          break;
        }
      if (moved)
        continue;
      ws[j++] = c;
      if (lit_value(cl[0]) == kFalse) {
        while (i < ws.size())
          ws[j++] = ws[i++];
        ws.resize(j);
        qhead_ = trail_.size();
        return false;
      }
      assign(cl[0]);
    }
    ws.resize(j);
  }
  return true;
}

// Satisfied softs plus a clique cover of the conflict graph on the open
// softs: each clique holds at most one true variable.
std::size_t Engine::bound() {
  const std::size_t trivial = sat_soft_ + open_soft_;
  if (static_cast<long>(trivial) <= best_ || open_soft_ < 2)
    return trivial;

  open_list_.clear();
  for (std::uint32_t s = 0; s < soft_vars_.size(); ++s)
    if (value_[soft_vars_[s] - 1] == kOpen) {
      local_[s] = static_cast<std::int32_t>(open_list_.size());
      open_list_.push_back(s);
    } else {
      local_[s] = -1;
    }
  const std::size_t u = open_list_.size();
  const std::size_t words = (u + 63) / 64;
  rows_.assign(u * words, 0);
  degree_.assign(u, 0);
  bool any = false;
  for (const auto &cc : conflicts_) {
    if (cc.alive != 0)
      continue;
    const std::int32_t a = local_[cc.a], b = local_[cc.b];
    if (a < 0 || b < 0)
      continue;
    std::uint64_t &ab = rows_[a * words + (b >> 6)];
    const std::uint64_t bit = std::uint64_t{1} << (b & 63);
    if (ab & bit)
      continue;
    ab |= bit;
    rows_[b * words + (a >> 6)] |= std::uint64_t{1} << (a & 63);
    ++degree_[a];
    ++degree_[b];
    any = true;
  }
  if (!any)
    return trivial;

  std::vector<std::uint32_t> seq(u);
  std::iota(seq.begin(), seq.end(), 0u);
  std::stable_sort(seq.begin(), seq.end(), [&](std::uint32_t x,
                                               std::uint32_t y) {
    return degree_[x] > degree_[y];
  });
  cover_.clear();
  std::size_t cliques = 0;
  for (std::uint32_t v : seq) {
    const std::uint64_t *row = &rows_[v * words];
    bool placed = false;
    for (std::size_t c = 0; c < cliques; ++c) {
      std::uint64_t *cand = &cover_[c * words];
      if (cand[v >> 6] & (std::uint64_t{1} << (v & 63))) {
        for (std::size_t w = 0; w < words; ++w)
          cand[w] &= row[w];
        placed = true;
        break;
      }
    }
    if (!placed) {
      cover_.insert(cover_.end(), row, row + words);
      ++cliques;
    }
  }
  return sat_soft_ + cliques;
}

LitIdx Engine::pick_branch() const {
  for (Var v : order_)
    if (value_[v - 1] == kOpen)
      return 2 * (v - 1) + (first_phase_true_[v - 1] ? 0u : 1u);
  return LitIdx(-1);
}

void Engine::record_leaf() {
  best_ = static_cast<long>(sat_soft_);
  best_assignment_ = Assignment(num_vars_);
  for (std::size_t v = 0; v < num_vars_; ++v)
    best_assignment_.set(static_cast<Var>(v + 1), value_[v] == kTrue);
}

bool Engine::backtrack() {
  while (!decisions_.empty()) {
    Decision &d = decisions_.back();
    unassign_to(d.trail_start);
    if (!d.flipped) {
      d.flipped = true;
      assign(d.lit ^ 1);
      if (propagate())
        return true;
      continue;
    }
    decisions_.pop_back();
  }
  return false;
}

bool Engine::out_of_budget() {
  if (budget_.node_limit && nodes_ >= *budget_.node_limit)
    return true;
  if ((nodes_ & 63) != 0)
    return false;
  const std::chrono::duration<double> spent =
      std::chrono::steady_clock::now() - started_;
  return spent.count() >= budget_.time_limit;
}

SolveResult Engine::run() {
  if (empty_clause_)
    throw SolverError("hard clauses are unsatisfiable (empty clause)");
  for (LitIdx p : units_) {
    const auto v = lit_value(p);
    if (v == kFalse)
      throw SolverError("hard clauses are unsatisfiable (contradicting "
                        "units)");
    if (v == kOpen)
      assign(p);
  }
  if (!propagate())
    throw SolverError("hard clauses are unsatisfiable (root conflict)");

  if (initial_ && initial_->size() == num_vars_) {
    bool ok = true;
    for (std::size_t c = 0; ok && c + 1 < start_.size(); ++c) {
      bool sat = false;
      for (std::uint32_t t = start_[c]; t < start_[c + 1] && !sat; ++t)
        sat = initial_->satisfies(
            (lits_[t] & 1) ? Lit::neg((lits_[t] >> 1) + 1)
                           : Lit::pos((lits_[t] >> 1) + 1));
      ok = sat;
    }
    for (LitIdx p : units_)
      ok = ok && (*initial_)[(p >> 1) + 1] != ((p & 1) != 0);
    if (ok) {
      std::size_t count = 0;
      for (Var v : soft_vars_)
        count += (*initial_)[v] ? 1 : 0;
      best_ = static_cast<long>(count);
      best_assignment_ = *initial_;
    }
  }

  bool timed_out = false;
  bool running = true;
  while (running) {
    ++nodes_;
    if (out_of_budget()) {
      timed_out = true;
      break;
    }
    const std::size_t ub = bound();
    if (!root_bound_)
      root_bound_ = ub;
    if (static_cast<long>(ub) <= best_) {
      running = backtrack();
      continue;
    }
    const LitIdx branch = pick_branch();
    if (branch == LitIdx(-1)) {
      record_leaf();
      running = backtrack();
      continue;
    }
    decisions_.push_back({trail_.size(), branch, false, ub});
    assign(branch);
    if (!propagate())
      running = backtrack();
  }

  SolveResult r;
  r.nodes = nodes_;
  r.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                            started_)
                  .count();
  if (!timed_out) {
    if (best_ < 0)
      throw SolverError("hard clauses are unsatisfiable");
    r.status = SolveStatus::Optimal;
    r.lower_bound = r.upper_bound = static_cast<std::size_t>(best_);
    r.best_assignment = best_assignment_;
    return r;
  }

  std::size_t ub = root_bound_.value_or(soft_vars_.size());
  if (!decisions_.empty()) {
    ub = decisions_.back().bound;
    for (const auto &d : decisions_)
      if (!d.flipped)
        ub = std::max(ub, d.bound);
  }
  if (best_ >= 0) {
    r.status = SolveStatus::Feasible;
    r.lower_bound = static_cast<std::size_t>(best_);
    r.best_assignment = best_assignment_;
  }
  r.upper_bound = std::max(ub, r.lower_bound);
  if (r.status == SolveStatus::Feasible && r.upper_bound == r.lower_bound)
    r.status = SolveStatus::Optimal;
  return r;
}

} // namespace

SolveResult solve_internal(const WcnfFormula &f, const SolveBudget &budget,
                           const EngineHints &hints) {
  if (!(budget.time_limit > 0.0))
    throw std::invalid_argument("time limit must be positive");
  f.validate();
  Engine engine(f, budget, hints);
  return engine.run();
}

} // namespace kclub
