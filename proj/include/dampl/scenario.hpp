#ifndef DAMPL_SCENARIO_HPP
#define DAMPL_SCENARIO_HPP

#include <set>
#include <string>
#include <vector>

#include "dampl/constitutive.hpp"
#include "dampl/mesh.hpp"

namespace dampl {

// Named C^1 time profile family. Ramp kinds get their corners blended with a
// quadratic patch of the given width so that value and slope are continuous.
struct TimeProfile {
  enum class Kind { Constant, Ramp, RampHold };
  Kind kind = Kind::Constant;
  double t0 = 0.0, t1 = 1.0;
  double blend = 0.0;  // full blend width; 0 disables smoothing

  double value(double t) const;
  double derivative(double t) const;
  double max_abs_value(double horizon) const;
  double max_abs_derivative(double horizon) const;
};

// Spatial mode of the Dirichlet datum; enters only through its constant strain.
enum class DirichletMode { UniaxialX, UniaxialY, ShearXY, Isotropic };

struct SolverConfig {
  double am_tol = 1e-10;
  int am_max_sweeps = 200;
  double prox_step_init = 1.0;
  double backtrack_factor = 0.5;
  int prox_max_iters = 40;
  double stationarity_tol = 1e-6;
};

struct CompetitorSpec {
  enum class Kind { UniformDamageDrop, Recovery, RandomPerturbation, DPerturbation, ElasticRebalance };
  Kind kind = Kind::UniformDamageDrop;
  int count = 1;
  double delta = 0.05;     // uniform damage drop
  double target = 0.5;     // recovery target chi-hat
  double delta0 = 0.2;     // initial recovery shift, halved per competitor
  double scale = 0.05;     // perturbation scale
  unsigned seed = 1;
};

struct VerifyConfig {
  int competitors_per_family = 200;
  unsigned seed = 12345;
  double drop_delta = 0.05;
  double recovery_target = 0.5;
  double recovery_delta0 = 0.2;
  double perturb_scale = 0.05;
  double d_perturb_scale = 0.05;
  int samples = 1000;

  std::vector<CompetitorSpec> competitor_specs() const;
};

struct TimeGrid {
  double horizon = 1.0;
  int n_steps = 10;
  double dt() const { return horizon / n_steps; }
  double t(int k) const { return horizon * k / n_steps; }
};

// Full problem description: mesh, material, loading, time grid, initial state,
// solver and verification settings. finalize() builds the derived objects and
// throws ValidationError listing every violated parameter condition.
struct Scenario {
  // mesh spec
  int dim = 1;
  double length_x = 1.0, length_y = 1.0;
  int elements_x = 4, elements_y = 4;
  std::set<Side> dirichlet_sides{Side::Left};

  MaterialParams mat;

  // loading spec
  TimeProfile::Kind uD_kind = TimeProfile::Kind::Constant;
  double uD_t0 = 0.0, uD_t1 = 1.0;
  double uD_amplitude = 0.0;
  DirichletMode uD_mode = DirichletMode::UniaxialX;
  TimeProfile::Kind f_kind = TimeProfile::Kind::Constant;
  double f_t0 = 0.0, f_t1 = 1.0;
  double volume_force_x = 0.0, volume_force_y = 0.0;
  double traction_x = 0.0, traction_y = 0.0;
  Side traction_side = Side::Right;
  double blend_width = -1.0;  // < 0 means auto: 2 * dt

  TimeGrid time;

  // initial state spec
  double chi0 = 1.0;
  double d0_xx = 0.0, d0_yy = 0.0, d0_xy = 0.0;

  SolverConfig solver;
  VerifyConfig verification;

  // derived (set by finalize)
  Mesh mesh;
  TimeProfile uD_profile, f_profile;
  SymTensor2 e_D0;          // strain of the Dirichlet mode, amplitude included
  SymTensor2 d0;            // initial plastic strain (projected onto S)
  bool finalized = false;

  void finalize();

  SymTensor2 e_D(double t) const { return e_D0 * uD_profile.value(t); }
  SymTensor2 dt_e_D(double t) const { return e_D0 * uD_profile.derivative(t); }

  // True for the simplified-system configuration (K = Id): lambda = 0,
  // mu_L = 1/2, k_min = 1.
  bool is_identity_stiffness() const {
    return mat.lame_lambda == 0.0 && mat.lame_mu == 0.5 && mat.k_min == 1.0;
  }
};

}  // namespace dampl

#endif
