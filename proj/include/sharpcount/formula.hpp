#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sharpcount/bitvector.hpp"

namespace sharpcount {

/// Variables are numbered 1..n as in DIMACS.
using Var = std::uint32_t;

/// Model counts. Exact counts are only produced for n <= 62.
using Count = std::uint64_t;

/// Raised when an instance is too large for the requested exact method.
class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FormulaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class ParseErrorKind {
  kMissingHeader,
  kMalformedHeader,
  kBadToken,
  kLiteralOutOfRange,
  kWrongClauseCount,
  kUnterminatedClause,
};

class ParseError : public FormulaError {
 public:
  ParseError(ParseErrorKind kind, std::size_t line, const std::string& what);
  ParseErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  ParseErrorKind kind_;
  std::size_t line_;
};

class Literal {
 public:
  Literal(Var var, bool positive) : code_(positive ? static_cast<std::int64_t>(var) : -static_cast<std::int64_t>(var)) {}
  static Literal fromDimacs(std::int64_t code) { return Literal(code); }

  Var var() const { return static_cast<Var>(code_ < 0 ? -code_ : code_); }
  bool positive() const { return code_ > 0; }
  std::int64_t toDimacs() const { return code_; }

  /// x^a is satisfied exactly when x = a.
  bool satisfiedBy(bool value) const { return value == positive(); }

  Literal operator~() const { return Literal(-code_); }

  friend bool operator==(Literal, Literal) = default;
  friend std::strong_ordering operator<=>(Literal a, Literal b) {
    if (auto c = a.var() <=> b.var(); c != 0)
      return c;
    return a.code_ <=> b.code_;
  }

 private:
  explicit Literal(std::int64_t code) : code_(code) {}
  std::int64_t code_;
};

/// Disjunction of literals, sorted by variable with duplicates removed. A
/// clause holding both x and ~x is kept and flagged tautological.
class Clause {
 public:
  Clause() = default;
  explicit Clause(std::vector<Literal> literals);
  Clause(std::initializer_list<std::int64_t> dimacs);

  std::span<const Literal> literals() const { return literals_; }
  std::size_t size() const { return literals_.size(); }
  bool empty() const { return literals_.empty(); }
  bool tautological() const { return tautological_; }

  friend bool operator==(const Clause&, const Clause&) = default;
  friend auto operator<=>(const Clause& a, const Clause& b) { return a.literals_ <=> b.literals_; }

 private:
  std::vector<Literal> literals_;
  bool tautological_ = false;
};

class CnfFormula {
 public:
  CnfFormula() = default;
  explicit CnfFormula(std::size_t numVars, std::vector<Clause> clauses = {});

  std::size_t numVars() const { return numVars_; }
  std::size_t numClauses() const { return clauses_.size(); }
  std::span<const Clause> clauses() const { return clauses_; }

  /// Maximum clause width (k); 0 for a formula without clauses.
  std::size_t width() const { return width_; }

  bool hasEmptyClause() const;

  /// Same formula with clauses sorted, for clause-set comparisons.
  CnfFormula normalized() const;

  /// Variables that occur in at least one non-tautological clause.
  std::vector<Var> occurringVars() const;

  friend bool operator==(const CnfFormula&, const CnfFormula&) = default;

 private:
  std::size_t numVars_ = 0;
  std::vector<Clause> clauses_;
  std::size_t width_ = 0;
};

/// Ordered sequence of distinct variable assignments (alpha).
class PartialAssignment {
 public:
  PartialAssignment() = default;
  PartialAssignment(std::initializer_list<std::pair<Var, bool>> entries);

  /// Throws FormulaError if `var` is already assigned.
  void assign(Var var, bool value);
  /// alpha u (x = a).
  PartialAssignment extended(Var var, bool value) const;

  bool contains(Var var) const { return var < slots_.size() && slots_[var] >= 0; }
  std::optional<bool> valueOf(Var var) const;
  std::size_t size() const { return entries_.size(); }
  std::span<const std::pair<Var, bool>> entries() const { return entries_; }

 private:
  std::vector<std::pair<Var, bool>> entries_;
  std::vector<std::int8_t> slots_;
};

/// Total assignment over variables 1..n.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::size_t numVars) : bits_(numVars) {}
  explicit Assignment(BitVector bits) : bits_(std::move(bits)) {}

  std::size_t numVars() const { return bits_.size(); }
  bool operator[](Var var) const { return bits_.get(var - 1); }
  void set(Var var, bool value) { bits_.set(var - 1, value); }
  void flip(Var var) { bits_.flip(var - 1); }

  /// Bit i holds variable i + 1.
  const BitVector& bits() const { return bits_; }

  PartialAssignment toPartial() const;

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  BitVector bits_;
};

CnfFormula parseDimacs(std::istream& in);
CnfFormula parseDimacs(std::string_view text);

/// DIMACS text, preceded by "c generated-by" comment lines.
std::string toDimacs(const CnfFormula& formula, std::span<const std::string> comments = {});

/// F|alpha: satisfied clauses and tautologies dropped, falsified literals
/// removed, emptied clauses kept as the empty clause.
CnfFormula restrict(const CnfFormula& formula, const PartialAssignment& alpha);

bool evaluate(const CnfFormula& formula, const Assignment& assignment);
/// Same as evaluate, on a raw bit vector (bit i = variable i + 1).
bool evaluateBits(const CnfFormula& formula, const BitVector& bits);

/// m independent clauses, each over k distinct uniform variables with uniform signs.
CnfFormula randomKCnf(std::size_t numVars, std::size_t numClauses, std::size_t k, std::uint64_t seed);

inline constexpr std::size_t kBruteForceMaxVars = 30;
inline constexpr std::size_t kExactCountMaxVars = 62;

/// Truth-table count over all 2^n assignments.
Count bruteForceCount(const CnfFormula& formula);

/// Branching counter with unit propagation.
Count dpllCount(const CnfFormula& formula);

/// Assignments forced by unit propagation, or nullopt on conflict.
std::optional<PartialAssignment> unitPropagate(const CnfFormula& formula);

/// Exact satisfiability search; any returned assignment satisfies `formula`.
std::optional<Assignment> findSolution(const CnfFormula& formula);

}  // namespace sharpcount
