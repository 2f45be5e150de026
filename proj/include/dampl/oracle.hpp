#ifndef DAMPL_ORACLE_HPP
#define DAMPL_ORACLE_HPP

#include "dampl/solver.hpp"

namespace dampl {

struct OracleResult {
  StateFields fields;
  double objective = 0.0;
  long long candidates_evaluated = 0;
};

// Exhaustive search over a quantized grid of the internal variables with an
// exact elastic solve per candidate; the independent ground truth for the
// incremental minimization on tiny instances. The grid for each chi unknown is
// the previous value plus uniform levels in [0, chi_prev]; each D component
// ranges symmetrically over the admissible span and candidates are projected
// onto S and rejected outside K. Throws DomainError with a size report when
// the instance exceeds the guards (unknowns <= 8, levels <= 21, <= 2e7 combos).
OracleResult oracle_minimize(double t, const StateFields& prev, const Scenario& sc, int levels);

// Rounds the internal variables of q onto the oracle grid anchored at prev
// (u is kept). The objective increase of the snapped state bounds how much of
// an AM-vs-oracle objective difference is mere quantization.
StateFields snap_to_grid(const StateFields& q, const StateFields& prev, const Scenario& sc,
                         int levels);

}  // namespace dampl

#endif
