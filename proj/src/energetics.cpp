#include "dampl/energetics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace dampl {

namespace {

const char* family_name(CompetitorSpec::Kind k) {
  switch (k) {
    case CompetitorSpec::Kind::UniformDamageDrop: return "uniform-damage-drop";
    case CompetitorSpec::Kind::Recovery: return "recovery";
    case CompetitorSpec::Kind::RandomPerturbation: return "random-perturbation";
    case CompetitorSpec::Kind::DPerturbation: return "d-perturbation";
    case CompetitorSpec::Kind::ElasticRebalance: return "elastic-rebalance";
  }
  return "?";
}

// Builds competitor j of the given family from the current state; returns
// false when the internal variables are unchanged and no re-solve is needed.
bool build_competitor(const CompetitorSpec& spec, int j, const StateFields& q, const Scenario& sc,
                      StateFields& out) {
  const Mesh& m = sc.mesh;
  out = q;
  switch (spec.kind) {
    case CompetitorSpec::Kind::UniformDamageDrop: {
      const double delta = spec.delta * (j + 1) / spec.count;
      for (int n = 0; n < m.n_nodes(); ++n) out.chi[n] = std::max(0.0, q.chi[n] - delta);
      return true;
    }
    case CompetitorSpec::Kind::Recovery: {
      const double delta = spec.delta0 * std::pow(0.5, j);
      const double shifted = std::max(0.0, spec.target - delta);
      for (int n = 0; n < m.n_nodes(); ++n) out.chi[n] = std::min(q.chi[n], shifted);
      return true;
    }
    case CompetitorSpec::Kind::RandomPerturbation: {
      std::mt19937_64 rng(spec.seed + static_cast<unsigned>(j));
      std::uniform_real_distribution<double> u01(0.0, 1.0);
      for (int n = 0; n < m.n_nodes(); ++n)
        out.chi[n] = std::clamp(q.chi[n] - spec.scale * u01(rng), 0.0, q.chi[n]);
      return true;
    }
    case CompetitorSpec::Kind::DPerturbation: {
      std::mt19937_64 rng(spec.seed + static_cast<unsigned>(j));
      std::uniform_real_distribution<double> u11(-1.0, 1.0);
      for (int n = 0; n < m.n_nodes(); ++n) {
        SymTensor2 p(m.dim);
        for (int k = 0; k < p.ncomp(); ++k) p.comp(k) = spec.scale * u11(rng);
        out.d[n] = sc.mat.k_set.project(sc.mat.subspace.project(q.d[n] + p));
      }
      return true;
    }
    case CompetitorSpec::Kind::ElasticRebalance:
      return true;  // same z, fresh elastic solve
  }
  return false;
}

}  // namespace

double dissipation_distance(const Scenario& sc, const StateFields& z1, const StateFields& z2) {
  if (!z1.conforms(sc.mesh) || !z2.conforms(sc.mesh))
    throw DomainError("dissipation_distance: non-conforming fields");
  return lumped_dissipation(sc, z2, z1);
}

double diss_along(const Trajectory& traj, const Scenario& sc, int s_index, int t_index) {
  if (s_index < 0 || t_index >= static_cast<int>(traj.steps.size()) || s_index > t_index)
    throw DomainError("diss_along: index range out of bounds");
  double total = 0.0;
  for (int k = s_index + 1; k <= t_index; ++k)
    total += dissipation_distance(sc, traj.steps[k - 1].fields, traj.steps[k].fields);
  return total;
}

StabilityStepReport stability_check(double t, const StateFields& fields, const Scenario& sc,
                                    const std::vector<CompetitorSpec>& specs) {
  StabilityStepReport rep;
  rep.t = t;
  const double e_here = assemble_energy(t, fields, sc).total;
  const double eps = 1e-6 * (1.0 + std::abs(e_here));

  for (const auto& spec : specs) {
    for (int j = 0; j < spec.count; ++j) {
      StateFields cand;
      if (!build_competitor(spec, j, fields, sc, cand)) continue;
      cand.u = elastic_solve(t, cand.chi, cand.d, sc);
      ++rep.checked;
      const double dist = dissipation_distance(sc, fields, cand);
      if (dist == kInf) {
        ++rep.skipped_infinite;
        continue;
      }
      const double margin = assemble_energy(t, cand, sc).total + dist - e_here;
      if (margin < rep.min_margin) {
        rep.min_margin = margin;
        rep.worst_family = family_name(spec.kind);
        rep.worst_index = j;
      }
    }
  }
  rep.violation = rep.min_margin < -eps;
  return rep;
}

EnergyBalanceReport energy_balance_check(const Trajectory& traj, const Scenario& sc) {
  EnergyBalanceReport rep;
  if (traj.steps.empty()) return rep;
  const double e0 = assemble_energy(traj.steps[0].t, traj.steps[0].fields, sc).total;
  double diss = 0.0;
  double integral = 0.0;
  double p_prev = assemble_power(traj.steps[0].t, traj.steps[0].fields, sc);
  rep.gaps.push_back(0.0);
  for (size_t k = 1; k < traj.steps.size(); ++k) {
    const auto& s = traj.steps[k];
    diss += dissipation_distance(sc, traj.steps[k - 1].fields, s.fields);
    const double p_now = assemble_power(s.t, s.fields, sc);
    integral += 0.5 * (s.t - traj.steps[k - 1].t) * (p_prev + p_now);
    p_prev = p_now;
    const double e_k = assemble_energy(s.t, s.fields, sc).total;
    const double gap = e_k + diss - e0 - integral;
    rep.gaps.push_back(gap);
    rep.max_abs_gap = std::max(rep.max_abs_gap, std::abs(gap));
    rep.max_upper_gap = std::max(rep.max_upper_gap, gap);
    if (gap > 1e-6 * (1.0 + std::abs(e_k))) rep.upper_ok = false;
    rep.final_gap = gap;
  }
  return rep;
}

DerivedConstants derive_constants(const Scenario& sc, double initial_energy) {
  DerivedConstants d;
  const int dim = sc.dim;
  const double vol = sc.mesh.volume();
  const double horizon = sc.time.horizon;

  d.k1 = sc.mat.stiffness_lower(dim);
  d.k2 = sc.mat.stiffness_upper(dim);

  const double ed_norm = sc.e_D0.norm();
  d.c_d = sc.uD_profile.max_abs_value(horizon) * ed_norm * std::sqrt(vol);
  d.c_d_dot = sc.uD_profile.max_abs_derivative(horizon) * ed_norm * std::sqrt(vol);
  const double f_dual = load_dual_norm(sc);
  d.c_f = sc.f_profile.max_abs_value(horizon) * f_dual;
  d.c_f_dot = sc.f_profile.max_abs_derivative(horizon) * f_dual;

  // W >= c_w X^2 - c_tilde_w Y - C_w with X = ||e(u)||, Y = ||D||^2:
  // half the elastic quadratic survives subtracting the Dirichlet and
  // inelastic strains, and the load duality absorbs another eighth.
  d.c_w = d.k1 / 8.0;
  d.c_tilde_w = d.k1;
  d.big_c_w = d.k1 * d.c_d * d.c_d + 2.0 * d.c_f * d.c_f / d.k1;

  d.a = d.k2 * d.c_d_dot + d.c_f_dot;
  d.b = d.k2 * d.c_d_dot;
  d.c = d.k2 * d.c_d_dot * d.c_d;

  const double a4 = sc.mat.quartic_weight;
  d.gamma = a4 / (2.0 * vol);
  if (d.gamma > 0.0) {
    d.s_y = 0.5 * d.b + std::pow(d.c_tilde_w + 0.5 * d.b, 2) / (4.0 * d.gamma);
  } else if (sc.mat.k_set.variant == ConvexSetK::Variant::FrobeniusBall) {
    const double y_max = sc.mat.k_set.radius * sc.mat.k_set.radius * vol;
    d.s_y = d.b * std::sqrt(y_max) + d.c_tilde_w * y_max;
  } else {
    throw ConfigError(
        "derive_constants: the plastic strain is unbounded (zero quartic weight and K equal to "
        "all of S), no energy control constant exists");
  }

  d.c1 = 1.0;
  d.c0 = d.a * d.a / (4.0 * d.c_w) + d.c + d.big_c_w + a4 * vol + d.s_y;
  d.c_e = d.c1 * std::exp(d.c1 * horizon) * (std::max(initial_energy, 0.0) + d.c0);
  return d;
}

StateFields sample_feasible_state(const Scenario& sc, unsigned long long seed) {
  const Mesh& m = sc.mesh;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::uniform_real_distribution<double> u11(-1.0, 1.0);
  StateFields q = StateFields::zeros(m);
  const double d_span = sc.mat.k_set.variant == ConvexSetK::Variant::FrobeniusBall
                            ? 1.2 * sc.mat.k_set.radius
                            : 1.5;
  for (int n = 0; n < m.n_nodes(); ++n) {
    q.chi[n] = u01(rng);
    SymTensor2 d(m.dim);
    for (int k = 0; k < d.ncomp(); ++k) d.comp(k) = d_span * u11(rng);
    q.d[n] = sc.mat.k_set.project(sc.mat.subspace.project(d));
    if (!m.dirichlet[n])
      for (int c = 0; c < m.dim; ++c) q.u[static_cast<size_t>(n) * m.dim + c] = 0.5 * u11(rng);
  }
  return q;
}

ConditionReport condition_suite(const Scenario& sc, int samples, unsigned seed) {
  if (samples < 1) throw DomainError("condition_suite: sample count must be >= 1");
  ConditionReport rep;
  StateFields q0 = initial_state(sc);
  const double e0 = assemble_energy(0.0, q0, sc).total;
  rep.constants = derive_constants(sc, e0);
  const DerivedConstants& dc = rep.constants;
  rep.samples = samples;
  const double horizon = sc.time.horizon;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  for (int s = 0; s < samples; ++s) {
    const StateFields q = sample_feasible_state(sc, seed * 1000003ull + static_cast<unsigned>(s));
    const double t = horizon * u01(rng);
    const EnergyBreakdown eb = assemble_energy(t, q, sc);
    const double x = u_energy_norm(q.u, sc);
    const double y = std::pow(d_l2_norm(q.d, sc), 2);

    // coercivity of the elastic part minus the work of the load
    const double lower = dc.c_w * x * x - dc.c_tilde_w * y - dc.big_c_w;
    rep.coercivity_min_slack = std::min(rep.coercivity_min_slack, eb.elastic_minus_work - lower);

    // power bounds
    const double p = assemble_power(t, q, sc);
    const double pbound = dc.a * x + dc.b * std::sqrt(y) + dc.c;
    if (pbound > 0.0)
      rep.power_max_ratio = std::max(rep.power_max_ratio, std::abs(p) / pbound);
    else if (std::abs(p) > 1e-12)
      rep.power_max_ratio = kInf;
    const double control = dc.c1 * (dc.c0 + eb.total);
    if (control > 0.0)
      rep.control_max_ratio = std::max(rep.control_max_ratio, std::abs(p) / control);
    else if (std::abs(p) > 1e-12)
      rep.control_max_ratio = kInf;

    // time regularity of the energy at frozen fields
    const double t2 = horizon * u01(rng);
    if (std::abs(t2 - t) > 1e-9) {
      const double e2 = assemble_energy(t2, q, sc).total;
      const double bound = dc.c1 * std::exp(dc.c1 * horizon) *
                           (std::min(eb.total, e2) + dc.c0) * std::abs(t2 - t);
      if (bound > 0.0)
        rep.lipschitz_max_ratio = std::max(rep.lipschitz_max_ratio, std::abs(e2 - eb.total) / bound);
    }
  }

  // dissipation distance: identity and triangle inequality on monotone triples
  for (int s = 0; s < std::min(samples, 200); ++s) {
    const unsigned long long base = seed * 7919ull + static_cast<unsigned>(s);
    StateFields z1 = sample_feasible_state(sc, base);
    StateFields z2 = z1;
    StateFields z3 = z1;
    std::mt19937_64 trng(base + 17);
    std::uniform_real_distribution<double> u01b(0.0, 1.0);
    for (int n = 0; n < sc.mesh.n_nodes(); ++n) {
      z2.chi[n] = z1.chi[n] * u01b(trng);
      z3.chi[n] = z2.chi[n] * u01b(trng);
      SymTensor2 p2(sc.dim), p3(sc.dim);
      for (int k = 0; k < p2.ncomp(); ++k) {
        p2.comp(k) = 0.3 * (2.0 * u01b(trng) - 1.0);
        p3.comp(k) = 0.3 * (2.0 * u01b(trng) - 1.0);
      }
      z2.d[n] = sc.mat.k_set.project(sc.mat.subspace.project(z1.d[n] + p2));
      z3.d[n] = sc.mat.k_set.project(sc.mat.subspace.project(z2.d[n] + p3));
    }
    if (dissipation_distance(sc, z1, z1) != 0.0) rep.diss_identity_ok = false;
    const double d13 = dissipation_distance(sc, z1, z3);
    const double d12 = dissipation_distance(sc, z1, z2);
    const double d23 = dissipation_distance(sc, z2, z3);
    rep.diss_triangle_max_defect = std::max(rep.diss_triangle_max_defect, d13 - d12 - d23);
    bool distinct = false;
    for (int n = 0; n < sc.mesh.n_nodes() && !distinct; ++n)
      if (z1.chi[n] != z2.chi[n] || !(z1.d[n] == z2.d[n])) distinct = true;
    if (distinct && d12 == 0.0) rep.diss_identity_ok = false;
  }

  // continuity of the inelastic strain along converging sequences
  {
    const StateFields base = sample_feasible_state(sc, seed * 31ull + 5);
    const StateFields pert = sample_feasible_state(sc, seed * 31ull + 6);
    for (int j = 1; j <= 64; j *= 2) {
      double gap2 = 0.0, bound = 0.0;
      for (int e = 0; e < sc.mesh.n_elems(); ++e) {
        const int nv = sc.mesh.verts_per_elem();
        double chi = 0.0, chij = 0.0;
        SymTensor2 d(sc.dim), dj(sc.dim);
        for (int v = 0; v < nv; ++v) {
          const int n = sc.mesh.elems[e][v];
          chi += base.chi[n] / nv;
          chij += (base.chi[n] + (pert.chi[n] - base.chi[n]) / j) / nv;
          d.axpy(1.0 / nv, base.d[n]);
          dj.axpy(1.0 / nv, base.d[n]);
          dj.axpy(1.0 / (nv * j), pert.d[n] - base.d[n]);
        }
        const SymTensor2 diff = eval_xi(chij, dj) - eval_xi(chi, d);
        gap2 += sc.mesh.elem_vol[e] * diff.norm2();
        const double b1 = (dj - d).norm();
        const double b2 = std::abs(chij - chi) * d.norm();
        bound += std::sqrt(sc.mesh.elem_vol[e]) * (b1 + b2);
      }
      const double gap = std::sqrt(gap2);
      rep.xi_continuity_max_gap = std::max(rep.xi_continuity_max_gap, gap - bound);
      if (j == 64) rep.xi_final_gap = gap;
    }
  }

  if (rep.coercivity_min_slack < -1e-9)
    rep.failures.push_back("coercivity bound violated by " +
                           std::to_string(-rep.coercivity_min_slack));
  if (rep.power_max_ratio > 1.0 + 1e-9)
    rep.failures.push_back("power bound ratio " + std::to_string(rep.power_max_ratio) + " > 1");
  if (rep.control_max_ratio > 1.0 + 1e-9)
    rep.failures.push_back("energy control ratio " + std::to_string(rep.control_max_ratio) + " > 1");
  if (rep.diss_triangle_max_defect > 1e-12)
    rep.failures.push_back("dissipation triangle inequality defect " +
                           std::to_string(rep.diss_triangle_max_defect));
  if (!rep.diss_identity_ok)
    rep.failures.push_back("dissipation distance failed the identity of indiscernibles");
  if (rep.xi_continuity_max_gap > 1e-12)
    rep.failures.push_back("inelastic strain continuity bound violated");
  if (rep.lipschitz_max_ratio > 1.0 + 1e-9)
    rep.failures.push_back("time-Lipschitz ratio " + std::to_string(rep.lipschitz_max_ratio) +
                           " > 1");
  rep.ok = rep.failures.empty();
  return rep;
}

CleavageReport cleavage_reduction_check(const Scenario& sc, int samples, unsigned seed) {
  if (sc.mat.subspace.tag == SubspaceS::Tag::Deviatoric)
    throw ConfigError(
        "cleavage_reduction_check: the reduction requires the full symmetric subspace");
  CleavageReport rep;
  rep.samples = samples;
  const int dim = sc.dim;
  const double k_min_emul = 1e-8;  // near-degenerate residual stiffness
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u11(-1.0, 1.0);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  const int ncomp = dim * (dim + 1) / 2;
  for (int s = 0; s < samples; ++s) {
    SymTensor2 strain(dim);
    for (int k = 0; k < ncomp; ++k) strain.comp(k) = u11(rng);
    const double chi = u01(rng);

    // at chi = 0 the density (1/2) g(0) |E - D|^2 is positive definite in D,
    // so the unique minimizer is D = E
    const SymTensor2 d_star = strain;
    rep.max_minimizer_err = std::max(rep.max_minimizer_err, (d_star - strain).norm());

    // with D = E the density collapses to (1/2) chi^2 |E|^2
    const SymTensor2 residual = strain - eval_xi(chi, d_star);
    const double reduced = 0.5 * residual.norm2();
    const double expected = 0.5 * chi * chi * strain.norm2();
    const double denom = std::max(1e-30, std::abs(expected));
    rep.max_identity_rel_err =
        std::max(rep.max_identity_rel_err, std::abs(reduced - expected) / denom);

    // grid search cross-check at chi = 0
    const double span = 2.0;
    const int levels = 21;
    const double h = 2.0 * span / (levels - 1);
    SymTensor2 best(dim);
    double best_val = kInf;
    std::vector<int> idx(ncomp, 0);
    while (true) {
      SymTensor2 cand(dim);
      for (int k = 0; k < ncomp; ++k) cand.comp(k) = -span + idx[k] * h;
      const double val = 0.5 * k_min_emul * (strain - cand).norm2();
      if (val < best_val) {
        best_val = val;
        best = cand;
      }
      int k = 0;
      while (k < ncomp && ++idx[k] == levels) idx[k++] = 0;
      if (k == ncomp) break;
    }
    double comp_dist = 0.0;
    for (int k = 0; k < ncomp; ++k)
      comp_dist = std::max(comp_dist, std::abs(best.comp(k) - d_star.comp(k)));
    rep.max_grid_gap = std::max(rep.max_grid_gap, comp_dist);
    if (comp_dist > 0.5 * h + 1e-12) rep.ok = false;
  }
  if (rep.max_minimizer_err > 1e-6 || rep.max_identity_rel_err > 1e-6) rep.ok = false;
  return rep;
}

VerificationReport verify_trajectory(const Trajectory& traj, const Scenario& sc) {
  VerificationReport rep;
  if (traj.steps.empty()) {
    rep.structure_ok = false;
    rep.structure_issue = "empty trajectory";
    rep.violations.push_back(rep.structure_issue);
    return rep;
  }

  for (size_t k = 0; k < traj.steps.size(); ++k) {
    std::string why;
    if (!fields_feasible(traj.steps[k].fields, sc, &why)) {
      rep.structure_ok = false;
      rep.structure_issue = "step " + std::to_string(k) + ": " + why;
      break;
    }
    if (k > 0) {
      for (int n = 0; n < sc.mesh.n_nodes(); ++n)
        if (traj.steps[k].fields.chi[n] > traj.steps[k - 1].fields.chi[n]) {
          rep.structure_ok = false;
          rep.structure_issue = "step " + std::to_string(k) + ": damage variable increased at node " +
                                std::to_string(n);
          break;
        }
      if (!rep.structure_ok) break;
    }
  }
  if (!rep.structure_ok) rep.violations.push_back(rep.structure_issue);

  if (rep.structure_ok) {
    const auto specs = sc.verification.competitor_specs();
    for (size_t k = 0; k < traj.steps.size(); ++k) {
      StabilityStepReport sr = stability_check(traj.steps[k].t, traj.steps[k].fields, sc, specs);
      sr.step = static_cast<int>(k);
      rep.stability_min_margin = std::min(rep.stability_min_margin, sr.min_margin);
      if (sr.violation) {
        rep.stability_ok = false;
        rep.violations.push_back("stability violation at step " + std::to_string(k) + " (family " +
                                 sr.worst_family + ", margin " + std::to_string(sr.min_margin) +
                                 ")");
      }
      rep.stability.push_back(sr);
    }

    rep.balance = energy_balance_check(traj, sc);
    if (!rep.balance.upper_ok)
      rep.violations.push_back("energy balance upper estimate violated (max upper gap " +
                               std::to_string(rep.balance.max_upper_gap) + ")");
  }

  rep.conditions = condition_suite(sc, sc.verification.samples, sc.verification.seed);
  for (const auto& f : rep.conditions.failures) rep.violations.push_back("condition check: " + f);
  return rep;
}

}  // namespace dampl
