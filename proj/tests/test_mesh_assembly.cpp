#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>
#include <string>

#include "dampl/assembly.hpp"
#include "dampl/energetics.hpp"
#include "dampl/scenario_io.hpp"
#include "doctest.h"

using namespace dampl;

namespace {

Scenario bar_scenario() {
  return parse_scenario_text(R"(
[mesh]
dim = 1
length_x = 1
elements_x = 8
dirichlet_sides = left

[material]
lambda = 0
mu = 0.5
k_min = 0.3
w = 0.2
alpha = 0.02
mu_diss = 0.1
nu_diss = 0.1
quartic_weight = 0.5
k_set = ball
k_radius = 1.5

[loading]
force_profile = ramp
force_t0 = 0
force_t1 = 1
traction_x = 0.4
traction_side = right

[time]
horizon = 1
steps = 10
)");
}

Scenario plate_scenario() {
  return parse_scenario_text(R"(
[mesh]
dim = 2
length_x = 1.5
length_y = 1
elements_x = 3
elements_y = 2
dirichlet_sides = left

[material]
lambda = 0.3
mu = 0.4
k_min = 0.5
w = 0.3
alpha = 0.02
beta = 0.05
mu_diss = 0.1
nu_diss = 0.1
quartic_weight = 0.1
subspace = deviatoric
k_set = ball
k_radius = 1

[loading]
dirichlet_profile = ramp
dirichlet_t0 = 0
dirichlet_t1 = 1
dirichlet_amplitude = 0.1
dirichlet_mode = shear-xy
force_profile = ramp
force_t0 = 0
force_t1 = 1
volume_force_y = -0.2
traction_x = 0.1
traction_side = right

[time]
horizon = 1
steps = 10
)");
}

// Random state strictly inside all constraints so the energy is smooth there.
StateFields interior_state(const Scenario& sc, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> chi_d(0.15, 0.85);
  std::uniform_real_distribution<double> u_d(-0.3, 0.3);
  StateFields f = StateFields::zeros(sc.mesh);
  for (int n = 0; n < sc.mesh.n_nodes(); ++n) {
    f.chi[n] = chi_d(rng);
    SymTensor2 d(sc.mesh.dim);
    for (int c = 0; c < d.ncomp(); ++c) d.comp(c) = u_d(rng);
    d = sc.mat.subspace.project(d);
    const double cap = 0.5 * sc.mat.k_set.radius;
    if (d.norm() > cap) d *= cap / d.norm();
    f.d[n] = d;
    for (int m = 0; m < sc.mesh.dim; ++m)
      if (!sc.mesh.dirichlet[n]) f.u[static_cast<size_t>(sc.mesh.dim) * n + m] = u_d(rng);
  }
  return f;
}

struct Direction {
  std::vector<double> u;
  std::vector<double> chi;
  std::vector<SymTensor2> d;
};

Direction random_direction(const Scenario& sc, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u_d(-1.0, 1.0);
  Direction dir;
  dir.u.assign(static_cast<size_t>(sc.mesh.dim) * sc.mesh.n_nodes(), 0.0);
  dir.chi.assign(sc.mesh.n_nodes(), 0.0);
  dir.d.assign(sc.mesh.n_nodes(), SymTensor2::zero(sc.mesh.dim));
  for (int n = 0; n < sc.mesh.n_nodes(); ++n) {
    dir.chi[n] = u_d(rng);
    SymTensor2 d(sc.mesh.dim);
    for (int c = 0; c < d.ncomp(); ++c) d.comp(c) = u_d(rng);
    dir.d[n] = sc.mat.subspace.project(d);
    for (int m = 0; m < sc.mesh.dim; ++m)
      if (!sc.mesh.dirichlet[n]) dir.u[static_cast<size_t>(sc.mesh.dim) * n + m] = u_d(rng);
  }
  return dir;
}

StateFields shifted(const StateFields& f, const Direction& dir, double h) {
  StateFields g = f;
  for (size_t i = 0; i < g.u.size(); ++i) g.u[i] += h * dir.u[i];
  for (size_t n = 0; n < g.chi.size(); ++n) {
    g.chi[n] += h * dir.chi[n];
    g.d[n].axpy(h, dir.d[n]);
  }
  return g;
}

void check_gradient_fd(const Scenario& sc, int states) {
  const double h = 1e-6;
  for (int s = 0; s < states; ++s) {
    const StateFields f = interior_state(sc, 100 + s);
    const Direction dir = random_direction(sc, 900 + s);
    const GradientBlocks g = energy_gradient_blocks(0.7, f, sc);
    double directional = 0.0;
    for (size_t i = 0; i < g.u.size(); ++i) directional += g.u[i] * dir.u[i];
    for (size_t n = 0; n < g.chi.size(); ++n) {
      directional += g.chi[n] * dir.chi[n];
      directional += frob_inner(g.d[n], dir.d[n]);
    }
    const double fd =
        (smooth_energy(0.7, shifted(f, dir, h), sc) - smooth_energy(0.7, shifted(f, dir, -h), sc)) /
        (2.0 * h);
    const double scale = std::max(std::abs(fd), 1e-6);
    CHECK(std::abs(directional - fd) / scale <= 1e-5);
  }
}

}  // namespace

TEST_CASE("structured mesh geometry in 1D") {
  const Scenario sc = bar_scenario();
  const Mesh& m = sc.mesh;
  CHECK(m.n_nodes() == 9);
  CHECK(m.n_elems() == 8);
  double vol = 0.0, wsum = 0.0;
  for (double v : m.elem_vol) vol += v;
  for (double w : m.node_weight) wsum += w;
  CHECK(vol == doctest::Approx(1.0));
  CHECK(wsum == doctest::Approx(1.0));
  CHECK(m.dirichlet[0]);
  CHECK(!m.dirichlet[8]);
  CHECK(m.side_nodes(Side::Left) == std::vector<int>{0});
  CHECK(m.side_nodes(Side::Right) == std::vector<int>{8});
}

TEST_CASE("structured mesh geometry in 2D") {
  const Scenario sc = plate_scenario();
  const Mesh& m = sc.mesh;
  CHECK(m.n_nodes() == 4 * 3);
  CHECK(m.n_elems() == 2 * 3 * 2);
  double vol = 0.0, wsum = 0.0;
  for (double v : m.elem_vol) vol += v;
  for (double w : m.node_weight) wsum += w;
  CHECK(vol == doctest::Approx(1.5));
  CHECK(wsum == doctest::Approx(1.5));
  CHECK(m.side_nodes(Side::Left).size() == 3);
  CHECK(m.side_nodes(Side::Bottom).size() == 4);
  CHECK(m.side_edges(Side::Right).size() == 2);
  // shape gradients reproduce the constant-1 partition: sum over vertices is 0
  for (int e = 0; e < m.n_elems(); ++e) {
    for (int axis = 0; axis < 2; ++axis) {
      double s = 0.0;
      for (int v = 0; v < 3; ++v) s += m.shape_grad[e][v][axis];
      CHECK(s == doctest::Approx(0.0));
    }
  }
}

TEST_CASE("elastic solve minimizes the displacement energy") {
  for (const Scenario& sc : {bar_scenario(), plate_scenario()}) {
    StateFields f = interior_state(sc, 42);
    f.u = elastic_solve(0.8, f.chi, f.d, sc);
    const GradientBlocks g = energy_gradient_blocks(0.8, f, sc);
    double gnorm = 0.0;
    for (double v : g.u) gnorm = std::max(gnorm, std::abs(v));
    CHECK(gnorm < 1e-8);

    const double e0 = smooth_energy(0.8, f, sc);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u_d(-0.05, 0.05);
    for (int trial = 0; trial < 20; ++trial) {
      StateFields p = f;
      for (int n = 0; n < sc.mesh.n_nodes(); ++n)
        for (int m = 0; m < sc.mesh.dim; ++m)
          if (!sc.mesh.dirichlet[n]) p.u[static_cast<size_t>(sc.mesh.dim) * n + m] += u_d(rng);
      CHECK(smooth_energy(0.8, p, sc) >= e0 - 1e-12);
    }
  }
}

TEST_CASE("energy breakdown is consistent and flags infeasible states") {
  const Scenario sc = bar_scenario();
  StateFields f = interior_state(sc, 7);
  const EnergyBreakdown e = assemble_energy(0.5, f, sc);
  CHECK(e.finite());
  CHECK(e.total == doctest::Approx(e.elastic_minus_work + e.damage + e.plastic + e.coupling));
  CHECK(e.total == doctest::Approx(smooth_energy(0.5, f, sc)));
  CHECK(e.damage >= 0.0);
  CHECK(e.plastic >= 0.0);
  CHECK(e.coupling >= 0.0);

  StateFields bad = f;
  bad.chi[3] = 1.2;
  CHECK(assemble_energy(0.5, bad, sc).total == kInf);
  CHECK(!fields_feasible(bad, sc));
  bad = f;
  bad.d[2].comp(0) = 5.0;  // outside the ball
  CHECK(assemble_energy(0.5, bad, sc).total == kInf);
  std::string why;
  CHECK(!fields_feasible(bad, sc, &why));
  CHECK(!why.empty());
  CHECK(fields_feasible(f, sc));
}

TEST_CASE("analytic gradients match finite differences on the bar") {
  check_gradient_fd(bar_scenario(), 20);
}

TEST_CASE("analytic gradients match finite differences on the plate") {
  check_gradient_fd(plate_scenario(), 20);
}

TEST_CASE("power equals the time derivative of the energy at frozen fields") {
  const double h = 1e-6;
  for (const Scenario& sc : {bar_scenario(), plate_scenario()}) {
    const StateFields f = interior_state(sc, 11);
    for (double t : {0.3, 0.55, 0.8}) {
      const double fd = (smooth_energy(t + h, f, sc) - smooth_energy(t - h, f, sc)) / (2.0 * h);
      CHECK(assemble_power(t, f, sc) == doctest::Approx(fd).epsilon(1e-6));
    }
  }
}

TEST_CASE("load vector and scales") {
  const Scenario sc = bar_scenario();
  const auto f0 = assemble_load_vector(sc);
  CHECK(f0.size() == static_cast<size_t>(sc.mesh.n_nodes()));
  CHECK(f0[0] == 0.0);  // zeroed on the Dirichlet side
  CHECK(f0[sc.mesh.n_nodes() - 1] == doctest::Approx(0.4));
  CHECK(load_dual_norm(sc) > 0.0);
  CHECK(loads_scale(sc) > 0.0);
}

TEST_CASE("lumped dissipation") {
  const Scenario sc = bar_scenario();
  StateFields a = StateFields::zeros(sc.mesh);
  StateFields b = a;
  CHECK(lumped_dissipation(sc, b, a) == 0.0);

  b.chi[4] = 0.6;
  b.d[4].comp(0) = 0.25;
  double expected = 0.0;
  expected += sc.mesh.node_weight[4] * sc.mat.nu_diss * 0.4;
  expected += sc.mesh.node_weight[4] * sc.mat.mu_diss * 0.25;
  CHECK(lumped_dissipation(sc, b, a) == doctest::Approx(expected));

  // damage may never heal
  CHECK(lumped_dissipation(sc, a, b) == kInf);
}
