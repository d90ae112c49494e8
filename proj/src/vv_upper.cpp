#include "sharpcount/vv_upper.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sharpcount {

ConstrainedFormula::ConstrainedFormula(const CnfFormula& formula, Gf2System system)
    : formula_(&formula), system_(std::move(system)) {
  if (system_.numColumns() != formula.numVars())
    throw std::invalid_argument("linear system has " + std::to_string(system_.numColumns()) +
                                " columns for a formula over " + std::to_string(formula.numVars()) + " variables");
}

ConstrainedCheck isSatisfiableConstrained(const ConstrainedFormula& constrained) {
  const EchelonForm form = eliminate(constrained.system());
  ConstrainedCheck check;
  check.rank = form.rank();
  if (!form.consistent())
    return check;
  SolutionEnumerator solutions(form);
  while (const BitVector* x = solutions.next()) {
    if (evaluateBits(constrained.formula(), *x)) {
      check.satisfiable = true;
      check.witness = Assignment(*x);
      break;
    }
  }
  check.enumerated = solutions.produced();
  return check;
}

double UpperResult::bound() const { return std::ldexp(1.0, static_cast<int>(u + 3)); }

UpperResult upperBound(const CnfFormula& formula, std::size_t mu, std::uint64_t seed) {
  const std::size_t n = formula.numVars();
  if (mu > n)
    throw std::invalid_argument("mu = " + std::to_string(mu) + " exceeds n = " + std::to_string(n));
  if (n == 0)
    throw std::invalid_argument("upper bound needs at least one variable");

  UpperResult result;
  result.mu = mu;
  result.n = n;
  result.seed = seed;
  const Gf2System system = randomSystem(n, seed);

  // F_nu satisfiable implies F_nu' satisfiable for every nu' < nu, so the
  // first satisfiable prefix on the way down fixes u = nu + 1.
  result.u = mu;
  for (std::size_t nu = n + 1; nu-- > mu;) {
    ConstrainedCheck check = isSatisfiableConstrained(ConstrainedFormula(formula, system.prefix(nu)));
    result.trace.push_back({nu, check.satisfiable, check.rank, check.enumerated});
    result.enumeratedTotal += check.enumerated;
    result.rankAtStop = check.rank;
    if (check.satisfiable) {
      if (nu == n) {
        result.u = n;
        result.allSatisfiable = true;
      } else {
        result.u = nu + 1;
      }
      break;
    }
  }
  return result;
}

}  // namespace sharpcount
