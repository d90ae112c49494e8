#pragma once

// Test-only oracles and fixtures. Nothing here calls the code under test
// except to build formulas.

#include <cmath>
#include <cstdint>
#include <vector>

#include "sharpcount/formula.hpp"
#include "sharpcount/gf2.hpp"

namespace sharpcount::testing {

/// All satisfying assignments by truth table, bit i = variable i + 1.
inline std::vector<std::uint64_t> allModels(const CnfFormula& f) {
  std::vector<std::uint64_t> models;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << f.numVars()); ++x) {
    bool ok = true;
    for (const Clause& c : f.clauses()) {
      bool sat = false;
      for (Literal lit : c.literals())
        sat |= (((x >> (lit.var() - 1)) & 1) == 1) == lit.positive();
      if (!sat) {
        ok = false;
        break;
      }
    }
    if (ok)
      models.push_back(x);
  }
  return models;
}

/// Solutions of A x = b by checking every x in {0,1}^n (n <= 20).
inline std::vector<std::uint64_t> linearSolutionsByExhaustion(const Gf2System& s) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << s.numColumns()); ++x) {
    bool ok = true;
    for (std::size_t i = 0; i < s.numRows() && ok; ++i) {
      bool parity = false;
      for (std::size_t j = 0; j < s.numColumns(); ++j)
        parity ^= s.row(i).get(j) && ((x >> j) & 1);
      ok = parity == s.rhs(i);
    }
    if (ok)
      out.push_back(x);
  }
  return out;
}

inline std::uint64_t toWord(const BitVector& v) {
  std::uint64_t x = 0;
  for (std::size_t j = 0; j < v.size(); ++j)
    x |= std::uint64_t{v.get(j)} << j;
  return x;
}

inline BitVector fromWord(std::uint64_t x, std::size_t n) {
  BitVector v(n);
  for (std::size_t j = 0; j < n; ++j)
    v.set(j, (x >> j) & 1);
  return v;
}

inline Gf2System systemFromStrings(std::size_t n, const std::vector<std::pair<std::string, bool>>& rows) {
  std::vector<BitVector> a;
  BitVector b(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    BitVector row(n);
    for (std::size_t j = 0; j < n; ++j)
      row.set(j, rows[i].first[j] == '1');
    a.push_back(row);
    b.set(i, rows[i].second);
  }
  return Gf2System(n, std::move(a), std::move(b));
}

/// Binomial lower slack: z standard errors below p for `trials` draws.
inline double binomialSlack(double p, int trials, double z = 3.0) {
  return z * std::sqrt(p * (1 - p) / trials);
}

}  // namespace sharpcount::testing
