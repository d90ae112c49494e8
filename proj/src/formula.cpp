#include "sharpcount/formula.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <numeric>
#include <sstream>

#include "sharpcount/rng.hpp"

namespace sharpcount {

ParseError::ParseError(ParseErrorKind kind, std::size_t line, const std::string& what)
    : FormulaError("line " + std::to_string(line) + ": " + what), kind_(kind), line_(line) {}

//===----------------------------------------------------------------------===//
// Clause / CnfFormula / assignments
//===----------------------------------------------------------------------===//

Clause::Clause(std::vector<Literal> literals) : literals_(std::move(literals)) {
  for (Literal lit : literals_)
    if (lit.var() == 0)
      throw FormulaError("variable index 0 is not a valid literal");
  std::sort(literals_.begin(), literals_.end());
  literals_.erase(std::unique(literals_.begin(), literals_.end()), literals_.end());
  for (std::size_t i = 1; i < literals_.size(); ++i)
    if (literals_[i].var() == literals_[i - 1].var())
      tautological_ = true;
}

Clause::Clause(std::initializer_list<std::int64_t> dimacs) : Clause([&] {
    std::vector<Literal> lits;
    for (auto code : dimacs)
      lits.push_back(Literal::fromDimacs(code));
    return lits;
  }()) {}

CnfFormula::CnfFormula(std::size_t numVars, std::vector<Clause> clauses)
    : numVars_(numVars), clauses_(std::move(clauses)) {
  for (const Clause& clause : clauses_) {
    for (Literal lit : clause.literals())
      if (lit.var() > numVars_)
        throw FormulaError("literal " + std::to_string(lit.toDimacs()) + " exceeds declared variable count " +
                           std::to_string(numVars_));
    width_ = std::max(width_, clause.size());
  }
}

bool CnfFormula::hasEmptyClause() const {
  return std::any_of(clauses_.begin(), clauses_.end(), [](const Clause& c) { return c.empty(); });
}

CnfFormula CnfFormula::normalized() const {
  auto sorted = clauses_;
  std::sort(sorted.begin(), sorted.end());
  return CnfFormula(numVars_, std::move(sorted));
}

std::vector<Var> CnfFormula::occurringVars() const {
  std::vector<bool> seen(numVars_ + 1, false);
  for (const Clause& clause : clauses_) {
    if (clause.tautological())
      continue;
    for (Literal lit : clause.literals())
      seen[lit.var()] = true;
  }
  std::vector<Var> vars;
  for (Var v = 1; v <= numVars_; ++v)
    if (seen[v])
      vars.push_back(v);
  return vars;
}

PartialAssignment::PartialAssignment(std::initializer_list<std::pair<Var, bool>> entries) {
  for (auto [var, value] : entries)
    assign(var, value);
}

void PartialAssignment::assign(Var var, bool value) {
  if (var == 0)
    throw FormulaError("variable index 0 cannot be assigned");
  if (contains(var))
    throw FormulaError("variable " + std::to_string(var) + " assigned twice");
  if (slots_.size() <= var)
    slots_.resize(var + 1, -1);
  slots_[var] = value ? 1 : 0;
  entries_.emplace_back(var, value);
}

PartialAssignment PartialAssignment::extended(Var var, bool value) const {
  PartialAssignment copy = *this;
  copy.assign(var, value);
  return copy;
}

std::optional<bool> PartialAssignment::valueOf(Var var) const {
  if (!contains(var))
    return std::nullopt;
  return slots_[var] == 1;
}

PartialAssignment Assignment::toPartial() const {
  PartialAssignment alpha;
  for (Var v = 1; v <= numVars(); ++v)
    alpha.assign(v, (*this)[v]);
  return alpha;
}

//===----------------------------------------------------------------------===//
// DIMACS
//===----------------------------------------------------------------------===//

namespace {

std::vector<std::string_view> splitWhitespace(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    if (i > start)
      tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

template <typename T>
std::optional<T> parseInteger(std::string_view token) {
  T value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    return std::nullopt;
  return value;
}

}  // namespace

CnfFormula parseDimacs(std::istream& in) {
  std::optional<std::size_t> numVars;
  std::size_t declaredClauses = 0;
  std::vector<Clause> clauses;
  std::vector<Literal> pending;
  std::size_t lineNo = 0;
  std::size_t pendingLine = 0;
  std::string line;

  while (std::getline(in, line)) {
    ++lineNo;
    auto tokens = splitWhitespace(line);
    if (tokens.empty() || tokens[0][0] == 'c')
      continue;
    if (tokens[0] == "%")
      break;
    if (tokens[0] == "p") {
      if (numVars)
        throw ParseError(ParseErrorKind::kMalformedHeader, lineNo, "duplicate problem line");
      if (tokens.size() != 4 || tokens[1] != "cnf")
        throw ParseError(ParseErrorKind::kMalformedHeader, lineNo, "expected 'p cnf <vars> <clauses>'");
      auto n = parseInteger<std::size_t>(tokens[2]);
      auto m = parseInteger<std::size_t>(tokens[3]);
      if (!n || !m || *n > 0x7fffffffU)
        throw ParseError(ParseErrorKind::kMalformedHeader, lineNo, "non-numeric or out-of-range header count");
      numVars = *n;
      declaredClauses = *m;
      continue;
    }
    if (!numVars)
      throw ParseError(ParseErrorKind::kMissingHeader, lineNo, "clause data before 'p cnf' header");
    for (auto token : tokens) {
      auto code = parseInteger<std::int64_t>(token);
      if (!code)
        throw ParseError(ParseErrorKind::kBadToken, lineNo, "unexpected token '" + std::string(token) + "'");
      if (*code == 0) {
        clauses.emplace_back(std::move(pending));
        pending.clear();
        continue;
      }
      if (static_cast<std::uint64_t>(*code < 0 ? -*code : *code) > *numVars)
        throw ParseError(ParseErrorKind::kLiteralOutOfRange, lineNo,
                         "literal " + std::string(token) + " out of range for " + std::to_string(*numVars) +
                             " variables");
      if (pending.empty())
        pendingLine = lineNo;
      pending.push_back(Literal::fromDimacs(*code));
    }
  }

  if (!numVars)
    throw ParseError(ParseErrorKind::kMissingHeader, lineNo, "missing 'p cnf' header");
  if (!pending.empty())
    throw ParseError(ParseErrorKind::kUnterminatedClause, pendingLine, "clause not terminated by 0");
  if (clauses.size() != declaredClauses)
    throw ParseError(ParseErrorKind::kWrongClauseCount, lineNo,
                     "header declares " + std::to_string(declaredClauses) + " clauses, found " +
                         std::to_string(clauses.size()));
  return CnfFormula(*numVars, std::move(clauses));
}

CnfFormula parseDimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parseDimacs(in);
}

std::string toDimacs(const CnfFormula& formula, std::span<const std::string> comments) {
  std::ostringstream out;
  out << "c generated-by sharpcount\n";
  for (const auto& comment : comments)
    out << "c generated-by " << comment << '\n';
  out << "p cnf " << formula.numVars() << ' ' << formula.numClauses() << '\n';
  for (const Clause& clause : formula.clauses()) {
    for (Literal lit : clause.literals())
      out << lit.toDimacs() << ' ';
    out << "0\n";
  }
  return out.str();
}

//===----------------------------------------------------------------------===//
// Semantics
//===----------------------------------------------------------------------===//

CnfFormula restrict(const CnfFormula& formula, const PartialAssignment& alpha) {
  for (auto [var, value] : alpha.entries())
    if (var > formula.numVars())
      throw FormulaError("restriction assigns variable " + std::to_string(var) + " outside the formula");

  std::vector<Clause> residual;
  residual.reserve(formula.numClauses());
  for (const Clause& clause : formula.clauses()) {
    if (clause.tautological())
      continue;
    bool satisfied = false;
    std::vector<Literal> kept;
    for (Literal lit : clause.literals()) {
      auto value = alpha.valueOf(lit.var());
      if (!value) {
        kept.push_back(lit);
      } else if (lit.satisfiedBy(*value)) {
        satisfied = true;
        break;
      }
    }
    if (!satisfied)
      residual.emplace_back(std::move(kept));
  }
  return CnfFormula(formula.numVars(), std::move(residual));
}

bool evaluateBits(const CnfFormula& formula, const BitVector& bits) {
  if (bits.size() < formula.numVars())
    throw FormulaError("assignment covers " + std::to_string(bits.size()) + " of " +
                       std::to_string(formula.numVars()) + " variables");
  for (const Clause& clause : formula.clauses()) {
    if (clause.tautological())
      continue;
    bool satisfied = false;
    for (Literal lit : clause.literals()) {
      if (lit.satisfiedBy(bits.get(lit.var() - 1))) {
        satisfied = true;
        break;
      }
    }
    if (!satisfied)
      return false;
  }
  return true;
}

bool evaluate(const CnfFormula& formula, const Assignment& assignment) {
  return evaluateBits(formula, assignment.bits());
}

CnfFormula randomKCnf(std::size_t numVars, std::size_t numClauses, std::size_t k, std::uint64_t seed) {
  if (k > numVars)
    throw FormulaError("clause width " + std::to_string(k) + " exceeds variable count " + std::to_string(numVars));
  SplitMix64 rng(seed);
  std::vector<Var> pool(numVars);
  std::iota(pool.begin(), pool.end(), Var{1});
  std::vector<Clause> clauses;
  clauses.reserve(numClauses);
  for (std::size_t c = 0; c < numClauses; ++c) {
    // Partial Fisher-Yates: the first k slots become a uniform k-subset.
    std::vector<Literal> lits;
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t j = i + rng.below(numVars - i);
      std::swap(pool[i], pool[j]);
      lits.emplace_back(pool[i], rng.coin());
    }
    clauses.emplace_back(std::move(lits));
  }
  return CnfFormula(numVars, std::move(clauses));
}

//===----------------------------------------------------------------------===//
// Exact oracles
//===----------------------------------------------------------------------===//

Count bruteForceCount(const CnfFormula& formula) {
  const std::size_t n = formula.numVars();
  if (n > kBruteForceMaxVars)
    throw GuardError("brute-force counting is limited to " + std::to_string(kBruteForceMaxVars) +
                     " variables, formula has " + std::to_string(n));
  // Clause c is satisfied by mask x iff (x & pos) != 0 or (~x & neg) != 0.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> masks;
  for (const Clause& clause : formula.clauses()) {
    if (clause.tautological())
      continue;
    std::uint32_t pos = 0, neg = 0;
    for (Literal lit : clause.literals())
      (lit.positive() ? pos : neg) |= std::uint32_t{1} << (lit.var() - 1);
    masks.emplace_back(pos, neg);
  }
  Count total = 0;
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t x = 0; x < limit; ++x) {
    const auto bits = static_cast<std::uint32_t>(x);
    bool ok = true;
    for (auto [pos, neg] : masks) {
      if (!((bits & pos) | (~bits & neg))) {
        ok = false;
        break;
      }
    }
    total += ok;
  }
  return total;
}

namespace {

/// Branching search with unit propagation over a mutable trail.
class Dpll {
 public:
  explicit Dpll(const CnfFormula& formula) : numVars_(formula.numVars()), values_(formula.numVars() + 1, -1) {
    for (const Clause& clause : formula.clauses())
      if (!clause.tautological())
        clauses_.emplace_back(clause.literals().begin(), clause.literals().end());
  }

  Count count() {
    const std::size_t mark = trail_.size();
    Count total = 0;
    if (propagate()) {
      if (auto branch = pickBranchVar()) {
        for (bool value : {false, true}) {
          const std::size_t inner = trail_.size();
          push(*branch, value);
          total += count();
          undo(inner);
        }
      } else {
        total = Count{1} << (numVars_ - trail_.size());
      }
    }
    undo(mark);
    return total;
  }

  bool search() {
    const std::size_t mark = trail_.size();
    if (!propagate()) {
      undo(mark);
      return false;
    }
    auto branch = pickBranchVar();
    if (!branch)
      return true;
    for (bool value : {false, true}) {
      const std::size_t inner = trail_.size();
      push(*branch, value);
      if (search())
        return true;
      undo(inner);
    }
    undo(mark);
    return false;
  }

  bool propagate() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& clause : clauses_) {
        if (clause.empty())
          return false;
        std::size_t unassigned = 0;
        Literal last = clause.front();
        bool satisfied = false;
        for (Literal lit : clause) {
          const std::int8_t v = values_[lit.var()];
          if (v < 0) {
            ++unassigned;
            last = lit;
          } else if (lit.satisfiedBy(v == 1)) {
            satisfied = true;
            break;
          }
        }
        if (satisfied)
          continue;
        if (unassigned == 0)
          return false;
        if (unassigned == 1) {
          push(last.var(), last.positive());
          changed = true;
        }
      }
    }
    return true;
  }

  PartialAssignment trailAsPartial() const {
    PartialAssignment alpha;
    for (Var v : trail_)
      alpha.assign(v, values_[v] == 1);
    return alpha;
  }

  Assignment model() const {
    Assignment a(numVars_);
    for (Var v = 1; v <= numVars_; ++v)
      a.set(v, values_[v] == 1);
    return a;
  }

 private:
  /// First unassigned variable of a shortest open clause.
  std::optional<Var> pickBranchVar() const {
    std::optional<Var> best;
    std::size_t bestOpen = SIZE_MAX;
    for (const auto& clause : clauses_) {
      std::size_t open = 0;
      std::optional<Var> first;
      bool satisfied = false;
      for (Literal lit : clause) {
        const std::int8_t v = values_[lit.var()];
        if (v < 0) {
          ++open;
          if (!first)
            first = lit.var();
        } else if (lit.satisfiedBy(v == 1)) {
          satisfied = true;
          break;
        }
      }
      if (!satisfied && open > 0 && open < bestOpen) {
        bestOpen = open;
        best = first;
      }
    }
    return best;
  }

  void push(Var var, bool value) {
    values_[var] = value ? 1 : 0;
    trail_.push_back(var);
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      values_[trail_.back()] = -1;
      trail_.pop_back();
    }
  }

  std::size_t numVars_;
  std::vector<std::vector<Literal>> clauses_;
  std::vector<std::int8_t> values_;
  std::vector<Var> trail_;
};

}  // namespace

Count dpllCount(const CnfFormula& formula) {
  if (formula.numVars() > kExactCountMaxVars)
    throw GuardError("exact counts are limited to " + std::to_string(kExactCountMaxVars) + " variables");
  return Dpll(formula).count();
}

std::optional<PartialAssignment> unitPropagate(const CnfFormula& formula) {
  Dpll engine(formula);
  if (!engine.propagate())
    return std::nullopt;
  return engine.trailAsPartial();
}

std::optional<Assignment> findSolution(const CnfFormula& formula) {
  Dpll engine(formula);
  if (!engine.search())
    return std::nullopt;
  return engine.model();
}

}  // namespace sharpcount
