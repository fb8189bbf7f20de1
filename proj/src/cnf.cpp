#include "kclub/cnf.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "kclub/error.hpp"

namespace kclub {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    std::size_t j = i;
    while (j < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[j])))
      ++j;
    if (j > i)
      out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos)
      end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

template <class T> bool parse_int(std::string_view tok, T &out) {
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && p == tok.data() + tok.size();
}

} // namespace

Lit Lit::from_dimacs(std::int64_t code) {
  if (code == 0 || code > INT32_MAX || code < -INT32_MAX)
    throw std::invalid_argument("invalid literal code " + std::to_string(code));
  return Lit(static_cast<std::int32_t>(code));
}

Clause::Clause(std::vector<Lit> lits) : lits_(std::move(lits)) {
  std::sort(lits_.begin(), lits_.end());
  for (std::size_t i = 0; i < lits_.size(); ++i) {
    if (lits_[i].var() == 0)
      throw std::invalid_argument("literal with variable 0");
    if (i > 0 && lits_[i - 1].var() == lits_[i].var())
      throw std::invalid_argument(
          lits_[i - 1] == lits_[i]
              ? "duplicate literal " + std::to_string(lits_[i].dimacs())
              : "complementary literals on variable " +
                    std::to_string(lits_[i].var()));
  }
}

bool Clause::contains(Lit l) const {
  return std::binary_search(lits_.begin(), lits_.end(), l);
}

std::size_t ClauseHash::operator()(const Clause &c) const {
  std::size_t h = c.size();
  for (Lit l : c)
    h = mix(h, static_cast<std::size_t>(static_cast<std::uint32_t>(l.dimacs())));
  return h;
}

bool Assignment::satisfies(const Clause &c) const {
  return std::any_of(c.begin(), c.end(),
                     [this](Lit l) { return satisfies(l); });
}

void WcnfFormula::set_num_vars(std::size_t n) {
  if (n < num_vars_)
    throw std::invalid_argument("cannot shrink variable count");
  num_vars_ = n;
}

void WcnfFormula::add_hard(Clause c) {
  for (Lit l : c)
    if (l.var() > num_vars_)
      throw std::out_of_range("variable " + std::to_string(l.var()) +
                              " exceeds num_vars");
  hard_.push_back(std::move(c));
}

void WcnfFormula::add_soft(Var v) {
  if (v == 0 || v > num_vars_)
    throw std::out_of_range("soft variable " + std::to_string(v) +
                            " out of range");
  if (soft_flag_.size() < v)
    soft_flag_.resize(num_vars_, 0);
  if (soft_flag_[v - 1])
    throw std::invalid_argument("soft clause {" + std::to_string(v) +
                                "} already present");
  soft_flag_[v - 1] = 1;
  soft_.push_back(v);
}

bool WcnfFormula::is_soft(Var v) const {
  return v >= 1 && v <= soft_flag_.size() && soft_flag_[v - 1];
}

void WcnfFormula::deduplicate_hard() {
  std::unordered_set<Clause, ClauseHash> seen;
  seen.reserve(hard_.size());
  std::vector<Clause> kept;
  kept.reserve(hard_.size());
  for (auto &c : hard_)
    if (seen.insert(c).second)
      kept.push_back(std::move(c));
  hard_ = std::move(kept);
}

void WcnfFormula::validate() const {
  for (const auto &c : hard_)
    for (Lit l : c)
      if (l.var() > num_vars_)
        throw std::logic_error("hard clause references variable beyond "
                               "num_vars");
  std::unordered_set<Var> seen;
  for (Var v : soft_) {
    if (v == 0 || v > num_vars_)
      throw std::logic_error("soft variable out of range");
    if (!seen.insert(v).second)
      throw std::logic_error("duplicate soft clause");
  }
}

std::string write_wcnf(const WcnfFormula &f, WcnfStyle style) {
  std::ostringstream out;
  const std::size_t top = f.soft().size() + 1;
  if (style == WcnfStyle::Classic)
    out << "p wcnf " << f.num_vars() << ' ' << f.num_clauses() << ' ' << top
        << '\n';
  for (Var v : f.soft())
    out << "1 " << v << " 0\n";
  for (const auto &c : f.hard()) {
    if (style == WcnfStyle::Classic)
      out << top;
    else
      out << 'h';
    for (Lit l : c)
      out << ' ' << l.dimacs();
    out << " 0\n";
  }
  return out.str();
}

WcnfFormula parse_wcnf(std::string_view text) {
  auto lines = split_lines(text);
  std::optional<std::uint64_t> top;
  std::size_t declared_vars = 0, declared_clauses = 0, seen_clauses = 0;
  WcnfFormula f;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    auto tok = split_ws(lines[i]);
    if (tok.empty() || tok[0] == "c")
      continue;
    if (tok[0] == "p") {
      if (top || tok.size() != 5 || tok[1] != "wcnf")
        throw ParseError(lineno, "expected 'p wcnf <vars> <clauses> <top>'");
      std::uint64_t t = 0;
      if (!parse_int(tok[2], declared_vars) ||
          !parse_int(tok[3], declared_clauses) || !parse_int(tok[4], t))
        throw ParseError(lineno, "malformed header");
      top = t;
      f.set_num_vars(declared_vars);
      continue;
    }
    if (!top)
      throw ParseError(lineno, "clause before header");
    std::uint64_t weight = 0;
    if (!parse_int(tok[0], weight) || tok.size() < 3 || tok.back() != "0")
      throw ParseError(lineno, "malformed clause line");
    std::vector<Lit> lits;
    for (std::size_t t = 1; t + 1 < tok.size(); ++t) {
      std::int64_t code = 0;
      if (!parse_int(tok[t], code) || code == 0)
        throw ParseError(lineno, "bad literal '" + std::string(tok[t]) + "'");
      lits.push_back(Lit::from_dimacs(code));
    }
    ++seen_clauses;
    try {
      if (weight >= *top) {
        f.add_hard(Clause(std::move(lits)));
      } else {
        if (weight != 1 || lits.size() != 1 || lits[0].negative())
          throw ParseError(lineno, "only weight-1 positive unit soft clauses "
                                   "are supported");
        f.add_soft(lits[0].var());
      }
    } catch (const std::invalid_argument &e) {
      throw ParseError(lineno, e.what());
    } catch (const std::out_of_range &e) {
      throw ParseError(lineno, e.what());
    }
  }
  if (!top)
    throw ParseError(lines.size(), "missing header");
  if (seen_clauses != declared_clauses)
    throw ParseError(lines.size(), "header declares " +
                                       std::to_string(declared_clauses) +
                                       " clauses, found " +
                                       std::to_string(seen_clauses));
  return f;
}

std::size_t count_satisfied_soft(const WcnfFormula &f, const Assignment &a) {
  if (a.size() != f.num_vars())
    throw std::invalid_argument("assignment covers " +
                                std::to_string(a.size()) + " of " +
                                std::to_string(f.num_vars()) + " variables");
  return static_cast<std::size_t>(std::count_if(
      f.soft().begin(), f.soft().end(), [&](Var v) { return a[v]; }));
}

std::optional<std::size_t> first_violated_hard(const WcnfFormula &f,
                                               const Assignment &a) {
  if (a.size() != f.num_vars())
    throw std::invalid_argument("assignment size mismatch");
  for (std::size_t i = 0; i < f.hard().size(); ++i)
    if (!a.satisfies(f.hard()[i]))
      return i;
  return std::nullopt;
}

SolverOutput parse_solver_output(std::string_view text, const WcnfFormula &f) {
  SolverOutput out;
  bool have_status = false;
  std::vector<std::string_view> value_tokens;
  for (auto line : split_lines(text)) {
    auto tok = split_ws(line);
    if (tok.empty())
      continue;
    if (tok[0] == "s") {
      std::string rest;
      for (std::size_t i = 1; i < tok.size(); ++i)
        rest += (i > 1 ? " " : "") + std::string(tok[i]);
      if (rest == "OPTIMUM FOUND")
        out.status = SolverStatus::Optimum;
      else if (rest == "SATISFIABLE")
        out.status = SolverStatus::Satisfiable;
      else if (rest == "UNSATISFIABLE")
        out.status = SolverStatus::Unsatisfiable;
      else if (rest == "UNKNOWN")
        out.status = SolverStatus::Unknown;
      else
        throw SolverError("unrecognized status line '" + std::string(line) +
                          "'");
      have_status = true;
    } else if (tok[0] == "o") {
      std::uint64_t cost = 0;
      if (tok.size() != 2 || !parse_int(tok[1], cost))
        throw SolverError("malformed cost line '" + std::string(line) + "'");
      out.cost = cost;
    } else if (tok[0] == "v") {
      value_tokens.insert(value_tokens.end(), tok.begin() + 1, tok.end());
    }
  }
  if (!have_status)
    throw SolverError("solver output has no status line");
  if (value_tokens.empty())
    return out;

  const std::size_t n = f.num_vars();
  Assignment a(n);
  const bool binary =
      value_tokens.size() == 1 && value_tokens[0].size() == n &&
      value_tokens[0].find_first_not_of("01") == std::string_view::npos;
  if (binary) {
    for (std::size_t i = 0; i < n; ++i)
      a.set(static_cast<Var>(i + 1), value_tokens[0][i] == '1');
  } else {
    std::vector<char> seen(n, 0);
    std::size_t covered = 0;
    for (auto tok : value_tokens) {
      std::int64_t code = 0;
      if (!parse_int(tok, code))
        throw SolverError("bad value token '" + std::string(tok) + "'");
      if (code == 0)
        continue;
      const auto var = static_cast<std::uint64_t>(code < 0 ? -code : code);
      if (var > n)
        throw SolverError("value line names variable " + std::to_string(var) +
                          " beyond " + std::to_string(n));
      if (!seen[var - 1]) {
        seen[var - 1] = 1;
        ++covered;
      }
      a.set(static_cast<Var>(var), code > 0);
    }
    if (covered != n)
      throw SolverError("assignment covers " + std::to_string(covered) +
                        " of " + std::to_string(n) + " variables");
  }
  if (auto bad = first_violated_hard(f, a))
    throw SolverError("solver assignment falsifies hard clause #" +
                      std::to_string(*bad + 1));
  out.assignment = std::move(a);
  return out;
}

// ---------------------------------------------------------------------------

std::size_t VarRoleHash::operator()(const VarRole &r) const {
  std::size_t h = r.index();
  std::visit(
      [&h](const auto &role) {
        using T = std::decay_t<decltype(role)>;
        if constexpr (std::is_same_v<T, NodeVar>) {
          h = mix(h, role.node);
        } else if constexpr (std::is_same_v<T, PathAux>) {
          for (Node v : role.nodes)
            h = mix(h, v);
        } else {
          h = mix(mix(mix(h, role.from), role.to),
                  static_cast<std::size_t>(role.length));
        }
      },
      r);
  return h;
}

VarMap::VarMap(std::size_t num_nodes) : num_nodes_(num_nodes) {
  roles_.reserve(num_nodes);
  for (Node v = 0; v < num_nodes; ++v)
    fresh_var(NodeVar{v});
}

Var VarMap::fresh_var(VarRole role) {
  if (auto *aux = std::get_if<PathAux>(&role))
    std::sort(aux->nodes.begin(), aux->nodes.end());
  auto [it, inserted] =
      index_.try_emplace(role, static_cast<Var>(roles_.size() + 1));
  if (inserted)
    roles_.push_back(std::move(role));
  return it->second;
}

std::optional<Var> VarMap::find(const VarRole &role) const {
  if (const auto *aux = std::get_if<PathAux>(&role)) {
    PathAux sorted = *aux;
    std::sort(sorted.nodes.begin(), sorted.nodes.end());
    auto it = index_.find(VarRole(sorted));
    return it == index_.end() ? std::nullopt : std::optional<Var>(it->second);
  }
  auto it = index_.find(role);
  return it == index_.end() ? std::nullopt : std::optional<Var>(it->second);
}

std::string VarMap::to_sidecar() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < roles_.size(); ++i) {
    const Var var = static_cast<Var>(i + 1);
    std::visit(
        [&](const auto &role) {
          using T = std::decay_t<decltype(role)>;
          if constexpr (std::is_same_v<T, NodeVar>) {
            out << "x " << role.node + 1 << ' ' << var << '\n';
          } else if constexpr (std::is_same_v<T, PathAux>) {
            out << "y " << var;
            for (Node v : role.nodes)
              out << ' ' << v + 1;
            out << '\n';
          } else {
            out << "v " << var << ' ' << role.from + 1 << ' ' << role.to + 1
                << ' ' << role.length << '\n';
          }
        },
        roles_[i]);
  }
  return out.str();
}

VarMap VarMap::from_sidecar(std::string_view text) {
  auto lines = split_lines(text);
  std::size_t nodes = 0;
  for (auto line : lines) {
    auto tok = split_ws(line);
    if (!tok.empty() && tok[0] == "x")
      ++nodes;
  }
  VarMap map(nodes);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto tok = split_ws(lines[i]);
    if (tok.empty())
      continue;
    std::vector<std::uint64_t> nums;
    for (std::size_t t = 1; t < tok.size(); ++t) {
      std::uint64_t v = 0;
      if (!parse_int(tok[t], v))
        throw ParseError(i + 1, "bad number '" + std::string(tok[t]) + "'");
      nums.push_back(v);
    }
    Var expected = 0;
    Var got = 0;
    if (tok[0] == "x" && nums.size() == 2 && nums[0] >= 1 &&
        nums[0] <= nodes) {
      expected = static_cast<Var>(nums[1]);
      got = map.node_var(static_cast<Node>(nums[0] - 1));
    } else if (tok[0] == "y" && nums.size() >= 2) {
      PathAux aux;
      for (std::size_t t = 1; t < nums.size(); ++t) {
        if (nums[t] == 0)
          throw ParseError(i + 1, "node labels are 1-based");
        aux.nodes.push_back(static_cast<Node>(nums[t] - 1));
      }
      expected = static_cast<Var>(nums[0]);
      got = map.fresh_var(std::move(aux));
    } else if (tok[0] == "v" && nums.size() == 4 && nums[1] >= 1 &&
               nums[2] >= 1) {
      expected = static_cast<Var>(nums[0]);
      got = map.fresh_var(ReachVar{static_cast<Node>(nums[1] - 1),
                                   static_cast<Node>(nums[2] - 1),
                                   static_cast<int>(nums[3])});
    } else {
      throw ParseError(i + 1, "malformed varmap line");
    }
    if (got != expected)
      throw ParseError(i + 1, "variable index " + std::to_string(expected) +
                                  " out of sequence");
  }
  return map;
}

} // namespace kclub
