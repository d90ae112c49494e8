#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "sharpcount/formula.hpp"
#include "sharpcount/gf2.hpp"

namespace sharpcount {

/// F together with a row prefix A_nu x = b_nu of a random system.
class ConstrainedFormula {
 public:
  ConstrainedFormula(const CnfFormula& formula, Gf2System system);

  const CnfFormula& formula() const { return *formula_; }
  const Gf2System& system() const { return system_; }
  std::size_t nu() const { return system_.numRows(); }

 private:
  const CnfFormula* formula_;
  Gf2System system_;
};

struct ConstrainedCheck {
  bool satisfiable = false;
  std::optional<Assignment> witness;
  std::size_t rank = 0;
  /// Linear-system solutions visited before deciding.
  std::uint64_t enumerated = 0;
};

/// Lists the solutions of the linear system and tests each against F,
/// stopping at the first model.
ConstrainedCheck isSatisfiableConstrained(const ConstrainedFormula& constrained);

struct UpperTraceEntry {
  std::size_t nu = 0;
  bool satisfiable = false;
  std::size_t rank = 0;
  std::uint64_t enumerated = 0;
};

struct UpperResult {
  std::size_t u = 0;
  std::size_t mu = 0;
  std::size_t n = 0;
  /// Every prefix down to nu = n was satisfiable; u is set to n.
  bool allSatisfiable = false;
  std::size_t rankAtStop = 0;
  std::uint64_t enumeratedTotal = 0;
  std::uint64_t seed = 0;
  /// Checked prefixes in scan order (nu decreasing).
  std::vector<UpperTraceEntry> trace;

  /// U = 2^(u + 3).
  double bound() const;
};

/// Scans nu = n, n-1, ..., mu over the prefixes of one random n x n system
/// and returns the smallest nu >= mu at which F_nu is unsatisfiable.
UpperResult upperBound(const CnfFormula& formula, std::size_t mu, std::uint64_t seed);

}  // namespace sharpcount
