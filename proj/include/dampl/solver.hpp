#ifndef DAMPL_SOLVER_HPP
#define DAMPL_SOLVER_HPP

#include <string>
#include <vector>

#include "dampl/assembly.hpp"

namespace dampl {

struct StepDiagnostics {
  int sweeps = 0;
  double objective = 0.0;              // E(t_k, q_k) + dissipation increment
  double stationarity_residual = 0.0;  // aggregated nodal residual
};

struct TrajectoryStep {
  int step = 0;
  double t = 0.0;
  StateFields fields;
  EnergyBreakdown energy;
  double diss_increment = 0.0;
  double diss_cum = 0.0;
  double power_integral = 0.0;
  double balance_gap = 0.0;
  int sweeps = 0;
  double stationarity_residual = 0.0;
};

struct Trajectory {
  std::vector<TrajectoryStep> steps;  // index 0 is the initial state
  bool complete = false;
  std::string abort_reason;
};

// One time-incremental minimization from prev at time t, by alternating
// exact elastic solves with proximal updates of chi and D. Throws DomainError
// if prev is infeasible and SolverError when the sweep budget is exhausted.
StateFields incremental_step(double t, const StateFields& prev, const Scenario& sc,
                             StepDiagnostics* diag = nullptr);

// Runs the full evolution on the scenario's time grid. A solver failure at
// some step leaves the preceding steps in place with complete = false.
Trajectory run_evolution(const Scenario& sc);

// Builds the initial state (uniform chi0, uniform d0, equilibrated u at t = 0).
StateFields initial_state(const Scenario& sc);

// First-order optimality residual of fields as the outcome of a step from
// prev at time t. Only defined for the identity-stiffness configuration
// (lambda = 0, mu = 1/2, k_min = 1); throws ConfigError otherwise.
double stationarity_residual(double t, const StateFields& fields, const StateFields& prev,
                             const Scenario& sc);

namespace detail {
// Same residual without the configuration gate; used inside the solver.
double stationarity_residual_any(double t, const StateFields& fields, const StateFields& prev,
                                 const Scenario& sc);
}  // namespace detail

}  // namespace dampl

#endif
