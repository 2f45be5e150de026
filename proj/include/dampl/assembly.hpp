#ifndef DAMPL_ASSEMBLY_HPP
#define DAMPL_ASSEMBLY_HPP

#include <string>
#include <vector>

#include "dampl/fields.hpp"
#include "dampl/scenario.hpp"

namespace dampl {

struct GradientBlocks {
  std::vector<double> u;          // dim * n_nodes, zero on Gamma_D
  std::vector<double> chi;        // n_nodes
  std::vector<SymTensor2> d;      // n_nodes, values in S
};

// Total energy E(t,q) = W + J + G + H with one-point quadrature for the
// nonlinear densities and element-barycenter chi, D inside the elastic form.
// Returns total = +inf iff a nodal indicator (chi in [0,1], D in K cap S) is violated.
EnergyBreakdown assemble_energy(double t, const StateFields& fields, const Scenario& sc);

// The smooth part of E (identical value on feasible states, no indicator checks).
double smooth_energy(double t, const StateFields& fields, const Scenario& sc);

// Power of the external loading at (t, q).
double assemble_power(double t, const StateFields& fields, const Scenario& sc);

// Unique minimizer of W(t, ., chi, D) over the discrete space (zero on Gamma_D),
// via CG to relative residual 1e-10. Throws SolverError on non-convergence.
std::vector<double> elastic_solve(double t, const std::vector<double>& chi,
                                  const std::vector<SymTensor2>& d, const Scenario& sc);

// Nodal gradients of the smooth part of E. Throws DomainError on infeasible fields.
GradientBlocks energy_gradient_blocks(double t, const StateFields& fields, const Scenario& sc);

// Unscaled load vector F0 (volume force + traction), zeroed on Gamma_D;
// <F(t), u> = f_profile(t) * dot(F0, u).
std::vector<double> assemble_load_vector(const Scenario& sc);

// Dual norm of F0 with respect to the strain norm ||e(u)||_L2 on free dofs.
double load_dual_norm(const Scenario& sc);

// Mass-lumped dissipation between internal-variable states; +inf if chi increases.
double lumped_dissipation(const Scenario& sc, const StateFields& z_new, const StateFields& z_old);

bool fields_feasible(const StateFields& fields, const Scenario& sc, std::string* why = nullptr);

// Discrete norms (one-point quadrature).
double u_energy_norm(const std::vector<double>& u, const Scenario& sc);
double d_l2_norm(const std::vector<SymTensor2>& d, const Scenario& sc);
double chi_l2_norm(const std::vector<double>& chi, const Scenario& sc);

// Magnitude of the applied loading, used to scale residual tolerances.
double loads_scale(const Scenario& sc);

}  // namespace dampl

#endif
