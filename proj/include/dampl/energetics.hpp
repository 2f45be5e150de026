#ifndef DAMPL_ENERGETICS_HPP
#define DAMPL_ENERGETICS_HPP

#include <string>
#include <vector>

#include "dampl/solver.hpp"

namespace dampl {

// R-distance between internal-variable states (chi, D) taken from z1 to z2;
// +inf unless chi decreases node-wise. Throws DomainError on size mismatch.
double dissipation_distance(const Scenario& sc, const StateFields& z1, const StateFields& z2);

// Dissipation accumulated over stored steps [s_index, t_index].
double diss_along(const Trajectory& traj, const Scenario& sc, int s_index, int t_index);

struct StabilityStepReport {
  int step = 0;
  double t = 0.0;
  int checked = 0;
  int skipped_infinite = 0;   // competitors priced at +inf by the distance
  double min_margin = kInf;
  std::string worst_family;
  int worst_index = -1;
  bool violation = false;     // min margin below -1e-6 (1 + |E|)
};

// Samples global stability at (t, fields): margin E(t, qt) + R -> E difference
// over every generated competitor, elastic displacement re-solved when the
// internal variables change.
StabilityStepReport stability_check(double t, const StateFields& fields, const Scenario& sc,
                                    const std::vector<CompetitorSpec>& specs);

struct EnergyBalanceReport {
  std::vector<double> gaps;    // signed balance defect per stored step
  double max_abs_gap = 0.0;
  double max_upper_gap = 0.0;  // most positive defect (should stay near zero)
  double final_gap = 0.0;
  bool upper_ok = true;        // every defect <= 1e-6 (1 + |E|)
};

EnergyBalanceReport energy_balance_check(const Trajectory& traj, const Scenario& sc);

// Constants entering the coercivity, power and Lipschitz estimates, computed
// from the scenario data. Throws ConfigError when the plastic strain is
// unbounded (no quartic well and K equal to all of S).
struct DerivedConstants {
  double k1 = 0.0;        // smallest stiffness eigenvalue over chi
  double k2 = 0.0;        // largest stiffness eigenvalue
  double c_d = 0.0;       // L2 bound of the Dirichlet strain
  double c_d_dot = 0.0;   // L2 bound of its time derivative
  double c_f = 0.0;       // dual-norm bound of the load
  double c_f_dot = 0.0;   // dual-norm bound of its time derivative
  double c_w = 0.0;       // quadratic coercivity weight in X = ||e(u)||
  double c_tilde_w = 0.0; // linear penalty in Y = ||D||^2
  double big_c_w = 0.0;   // additive coercivity offset
  double a = 0.0, b = 0.0, c = 0.0;  // |power| <= a X + b sqrt(Y) + c
  double gamma = 0.0;     // quartic coercivity weight in Y^2
  double s_y = 0.0;       // worst case of the Y terms
  double c0 = 0.0;
  double c1 = 1.0;
  double c_e = 0.0;       // Lipschitz-in-time constant of the energy
};

DerivedConstants derive_constants(const Scenario& sc, double initial_energy);

struct ConditionReport {
  DerivedConstants constants;
  int samples = 0;
  double coercivity_min_slack = kInf;   // W - (c_w X^2 - c_tilde_w Y - C_w)
  double power_max_ratio = 0.0;         // |P| / (a X + b sqrt(Y) + c)
  double control_max_ratio = 0.0;       // |P| / (c1 (c0 + E))
  double diss_triangle_max_defect = 0.0;
  bool diss_identity_ok = true;         // distance zero only at equal states
  double xi_continuity_max_gap = 0.0;   // bound defect on constructed sequences
  double xi_final_gap = 0.0;            // distance at the end of the sequence
  double lipschitz_max_ratio = 0.0;     // |E(t,q)-E(s,q)| / (c_E |t-s|)
  bool ok = true;
  std::vector<std::string> failures;
};

ConditionReport condition_suite(const Scenario& sc, int samples, unsigned seed);

struct CleavageReport {
  int samples = 0;
  double max_minimizer_err = 0.0;     // closed form vs e(u) + e_D at chi = 0
  double max_identity_rel_err = 0.0;  // reduced density vs (1/2) chi^2 |E|^2
  double max_grid_gap = 0.0;          // grid search vs closed form
  bool ok = true;
};

// Pointwise reduction of the elastic density by minimizing over D.
// Requires the full symmetric subspace; deviatoric S is a ConfigError.
CleavageReport cleavage_reduction_check(const Scenario& sc, int samples, unsigned seed);

struct VerificationReport {
  bool structure_ok = true;           // feasibility and chi monotonicity
  std::string structure_issue;        // names the violating step
  std::vector<StabilityStepReport> stability;
  double stability_min_margin = kInf;
  bool stability_ok = true;
  EnergyBalanceReport balance;
  ConditionReport conditions;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

// Full a-posteriori certification of a stored trajectory.
VerificationReport verify_trajectory(const Trajectory& traj, const Scenario& sc);

// Random feasible state for property sampling; u is a bounded random field
// vanishing on Gamma_D, chi in [0,1], D projected into K cap S.
StateFields sample_feasible_state(const Scenario& sc, unsigned long long seed);

}  // namespace dampl

#endif
