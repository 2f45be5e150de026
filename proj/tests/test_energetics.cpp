#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "dampl/assembly.hpp"
#include "dampl/energetics.hpp"
#include "dampl/scenario_io.hpp"
#include "doctest.h"

using namespace dampl;

namespace {

Scenario bar_scenario(const std::string& patch_from = "", const std::string& patch_to = "") {
  std::string cfg = R"(
[mesh]
dim = 1
length_x = 1
elements_x = 4
dirichlet_sides = left

[material]
lambda = 0
mu = 0.5
k_min = 1
w = 0.2
alpha = 0.01
mu_diss = 0.1
nu_diss = 0.1
quartic_weight = 0
k_set = ball
k_radius = 2

[loading]
force_profile = ramp
force_t0 = -0.5
force_t1 = 1.3
traction_x = 0.6
traction_side = right

[initial]
chi = 0.7

[solver]
am_tol = 1e-12
max_sweeps = 20000
stationarity_tol = 1e-5

[time]
horizon = 1
steps = 8

[verification]
competitors_per_family = 50
samples = 50
)";
  if (!patch_from.empty()) {
    const auto pos = cfg.find(patch_from);
    REQUIRE(pos != std::string::npos);
    cfg.replace(pos, patch_from.size(), patch_to);
  }
  return parse_scenario_text(cfg);
}

StateFields internal_state(const Scenario& sc, double chi, double d_xx) {
  StateFields f = StateFields::zeros(sc.mesh);
  for (auto& c : f.chi) c = chi;
  for (auto& d : f.d) d.comp(0) = d_xx;
  return f;
}

}  // namespace

TEST_CASE("dissipation distance: identity, monotone additivity, triangle") {
  const Scenario sc = bar_scenario();
  const StateFields a = internal_state(sc, 0.9, 0.0);
  const StateFields b = internal_state(sc, 0.6, 0.2);
  const StateFields c = internal_state(sc, 0.4, 0.5);

  CHECK(dissipation_distance(sc, a, a) == 0.0);
  CHECK(dissipation_distance(sc, a, b) > 0.0);
  // healing damage is forbidden
  CHECK(dissipation_distance(sc, b, a) == kInf);

  // along a monotone path the distance is additive
  const double direct = dissipation_distance(sc, a, c);
  const double split = dissipation_distance(sc, a, b) + dissipation_distance(sc, b, c);
  CHECK(direct == doctest::Approx(split).epsilon(1e-12));

  // triangle inequality with a non-collinear midpoint
  const StateFields mid = internal_state(sc, 0.7, 0.45);
  CHECK(dissipation_distance(sc, a, c) <=
        dissipation_distance(sc, a, mid) + dissipation_distance(sc, mid, c) + 1e-12);
}

TEST_CASE("trajectory dissipation is partition invariant") {
  const Scenario sc = bar_scenario();
  const Trajectory traj = run_evolution(sc);
  REQUIRE(traj.complete);
  const int last = static_cast<int>(traj.steps.size()) - 1;
  double whole = diss_along(traj, sc, 0, last);
  for (int split = 1; split < last; ++split) {
    const double parts = diss_along(traj, sc, 0, split) + diss_along(traj, sc, split, last);
    CHECK(parts == doctest::Approx(whole).epsilon(1e-12));
  }
  CHECK(whole == doctest::Approx(traj.steps.back().diss_cum).epsilon(1e-12));
}

TEST_CASE("every computed step passes the stability sampling") {
  const Scenario sc = bar_scenario();
  const Trajectory traj = run_evolution(sc);
  REQUIRE(traj.complete);
  const auto specs = sc.verification.competitor_specs();
  CHECK(specs.size() == 5);
  for (const auto& step : traj.steps) {
    const StabilityStepReport rep = stability_check(step.t, step.fields, sc, specs);
    CHECK(rep.checked > 0);
    const double gate = -1e-6 * (1.0 + std::abs(step.energy.total));
    CHECK(rep.min_margin >= gate);
    CHECK(!rep.violation);
  }
}

TEST_CASE("a state with an obvious downhill competitor is flagged unstable") {
  // high load, heavy pre-damage, plasticity far behind its threshold value
  const Scenario sc = bar_scenario("chi = 0.7", "chi = 0.3");
  StateFields frozen = internal_state(sc, 0.3, 0.0);
  frozen.u = elastic_solve(1.0, frozen.chi, frozen.d, sc);
  const StabilityStepReport rep = stability_check(1.0, frozen, sc, sc.verification.competitor_specs());
  CHECK(rep.min_margin < -1e-6);
  CHECK(rep.violation);
  CHECK(!rep.worst_family.empty());
}

TEST_CASE("energy balance bookkeeping on a computed trajectory") {
  const Scenario sc = bar_scenario();
  const Trajectory traj = run_evolution(sc);
  REQUIRE(traj.complete);
  const EnergyBalanceReport rep = energy_balance_check(traj, sc);
  CHECK(rep.gaps.size() == traj.steps.size());
  CHECK(rep.upper_ok);
  CHECK(rep.max_upper_gap <= 1e-6 * (1.0 + std::abs(traj.steps.back().energy.total)));
  CHECK(rep.final_gap == doctest::Approx(traj.steps.back().balance_gap));
}

TEST_CASE("derived constants and the structural inequalities") {
  const Scenario sc = bar_scenario();
  const StateFields q0 = initial_state(sc);
  const double e0 = assemble_energy(0.0, q0, sc).total;
  const DerivedConstants dc = derive_constants(sc, e0);
  CHECK(dc.k1 == doctest::Approx(sc.mat.k_min * 2.0 * sc.mat.lame_mu));
  CHECK(dc.k2 >= dc.k1);
  CHECK(dc.c_w > 0.0);
  CHECK(dc.c0 > 0.0);
  CHECK(dc.c1 >= 1.0);
  CHECK(dc.c_e > 0.0);

  // sampled inequalities all hold with the derived constants
  const ConditionReport rep = condition_suite(sc, 300, 2024);
  CHECK(rep.ok);
  CHECK(rep.samples == 300);
  CHECK(rep.coercivity_min_slack >= 0.0);
  CHECK(rep.power_max_ratio <= 1.0);
  CHECK(rep.control_max_ratio <= 1.0);
  CHECK(rep.diss_triangle_max_defect <= 1e-12);
  CHECK(rep.diss_identity_ok);
  CHECK(rep.lipschitz_max_ratio <= 1.0);
  CHECK(rep.failures.empty());

  // with no quartic well and unconstrained plastic strain the coercivity
  // constants cannot be derived
  const Scenario unbounded = bar_scenario("k_set = ball", "k_set = all");
  CHECK_THROWS_AS(derive_constants(unbounded, 0.0), ConfigError);
}

TEST_CASE("cleavage reduction of the elastic density") {
  const Scenario sc = bar_scenario();
  const CleavageReport rep = cleavage_reduction_check(sc, 100, 7);
  CHECK(rep.ok);
  CHECK(rep.samples == 100);
  CHECK(rep.max_minimizer_err <= 1e-6);
  CHECK(rep.max_identity_rel_err <= 1e-6);
  CHECK(rep.max_grid_gap <= 0.1 + 1e-9);  // half a grid cell at 21 levels over [-2, 2]

  Scenario dev = bar_scenario();
  dev.dim = 2;  // rebuild as 2D to allow a deviatoric subspace
  dev.elements_y = 2;
  dev.mat.subspace.tag = SubspaceS::Tag::Deviatoric;
  dev.finalize();
  CHECK_THROWS_AS(cleavage_reduction_check(dev, 10, 1), ConfigError);
}

TEST_CASE("random feasible states are feasible") {
  const Scenario sc = bar_scenario();
  for (unsigned long long seed = 0; seed < 50; ++seed) {
    const StateFields f = sample_feasible_state(sc, seed);
    CHECK(fields_feasible(f, sc));
  }
}

TEST_CASE("verification flags a planted damage increase and names the step") {
  const Scenario sc = bar_scenario();
  Trajectory traj = run_evolution(sc);
  REQUIRE(traj.complete);
  VerificationReport good = verify_trajectory(traj, sc);
  CHECK(good.ok());
  CHECK(good.structure_ok);
  CHECK(good.stability_ok);

  traj.steps[5].fields.chi[2] = traj.steps[4].fields.chi[2] + 0.05;
  const VerificationReport bad = verify_trajectory(traj, sc);
  CHECK(!bad.ok());
  CHECK(!bad.structure_ok);
  CHECK(bad.structure_issue.find("5") != std::string::npos);
}
