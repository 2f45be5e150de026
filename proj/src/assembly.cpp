#include "dampl/assembly.hpp"

#include <cmath>
#include <numeric>

namespace dampl {

namespace {

// Strain of the unit nodal displacement (vertex v, component c) on element e.
SymTensor2 unit_strain(const Mesh& m, int e, int v, int c) {
  SymTensor2 b(m.dim);
  const auto& g = m.shape_grad[e][v];
  for (int i = 0; i < m.dim; ++i)
    for (int j = i; j < m.dim; ++j) {
      double val = 0.0;
      if (i == c) val += 0.5 * g[j];
      if (j == c) val += 0.5 * g[i];
      b.set(i, j, val);
    }
  return b;
}

SymTensor2 element_strain(const Mesh& m, int e, const std::vector<double>& u) {
  SymTensor2 s(m.dim);
  const int nv = m.verts_per_elem();
  for (int v = 0; v < nv; ++v) {
    const int node = m.elems[e][v];
    const auto& g = m.shape_grad[e][v];
    for (int i = 0; i < m.dim; ++i)
      for (int j = i; j < m.dim; ++j) {
        const double ui = u[static_cast<size_t>(node) * m.dim + i];
        const double uj = u[static_cast<size_t>(node) * m.dim + j];
        s.set(i, j, s(i, j) + 0.5 * (ui * g[j] + uj * g[i]));
      }
  }
  return s;
}

double element_chi(const Mesh& m, int e, const std::vector<double>& chi) {
  double s = 0.0;
  const int nv = m.verts_per_elem();
  for (int v = 0; v < nv; ++v) s += chi[m.elems[e][v]];
  return s / nv;
}

SymTensor2 element_d(const Mesh& m, int e, const std::vector<SymTensor2>& d) {
  SymTensor2 s(m.dim);
  const int nv = m.verts_per_elem();
  for (int v = 0; v < nv; ++v) s += d[m.elems[e][v]];
  return s * (1.0 / nv);
}

std::vector<double> element_grad_chi(const Mesh& m, int e, const std::vector<double>& chi) {
  std::vector<double> g(m.dim, 0.0);
  const int nv = m.verts_per_elem();
  for (int v = 0; v < nv; ++v)
    for (int mdir = 0; mdir < m.dim; ++mdir)
      g[mdir] += chi[m.elems[e][v]] * m.shape_grad[e][v][mdir];
  return g;
}

std::vector<SymTensor2> element_grad_d(const Mesh& m, int e, const std::vector<SymTensor2>& d) {
  std::vector<SymTensor2> g(m.dim, SymTensor2::zero(m.dim));
  const int nv = m.verts_per_elem();
  for (int v = 0; v < nv; ++v)
    for (int mdir = 0; mdir < m.dim; ++mdir) g[mdir].axpy(m.shape_grad[e][v][mdir], d[m.elems[e][v]]);
  return g;
}

struct FreeDofs {
  std::vector<int> map;   // full dof -> free index or -1
  std::vector<int> list;  // free index -> full dof
};

FreeDofs free_dofs(const Mesh& m) {
  FreeDofs f;
  f.map.assign(static_cast<size_t>(m.dim) * m.n_nodes(), -1);
  for (int n = 0; n < m.n_nodes(); ++n)
    if (!m.dirichlet[n])
      for (int c = 0; c < m.dim; ++c) {
        f.map[static_cast<size_t>(n) * m.dim + c] = static_cast<int>(f.list.size());
        f.list.push_back(n * m.dim + c);
      }
  return f;
}

// Dense SPD system solved by Jacobi-preconditioned CG.
std::vector<double> cg_solve(const std::vector<double>& a, const std::vector<double>& rhs,
                             double rel_tol, const char* what) {
  const size_t n = rhs.size();
  std::vector<double> x(n, 0.0), r = rhs, z(n), p(n), ap(n);
  const double rhs_norm = std::sqrt(std::inner_product(rhs.begin(), rhs.end(), rhs.begin(), 0.0));
  if (rhs_norm == 0.0) return x;
  std::vector<double> dinv(n);
  for (size_t i = 0; i < n; ++i) dinv[i] = (a[i * n + i] != 0.0) ? 1.0 / a[i * n + i] : 1.0;
  for (size_t i = 0; i < n; ++i) z[i] = dinv[i] * r[i];
  p = z;
  double rz = std::inner_product(r.begin(), r.end(), z.begin(), 0.0);
  const int max_iters = static_cast<int>(10 * n + 200);
  for (int it = 0; it < max_iters; ++it) {
    for (size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (size_t j = 0; j < n; ++j) s += a[i * n + j] * p[j];
      ap[i] = s;
    }
    const double pap = std::inner_product(p.begin(), p.end(), ap.begin(), 0.0);
    if (pap <= 0.0) throw SolverError(std::string(what) + ": CG hit a non-positive curvature direction");
    const double alpha = rz / pap;
    for (size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    const double rnorm = std::sqrt(std::inner_product(r.begin(), r.end(), r.begin(), 0.0));
    if (rnorm <= rel_tol * rhs_norm) return x;
    for (size_t i = 0; i < n; ++i) z[i] = dinv[i] * r[i];
    const double rz_new = std::inner_product(r.begin(), r.end(), z.begin(), 0.0);
    for (size_t i = 0; i < n; ++i) p[i] = z[i] + (rz_new / rz) * p[i];
    rz = rz_new;
  }
  throw SolverError(std::string(what) + ": CG failed to reach relative residual " +
                    std::to_string(rel_tol) + " within iteration budget");
}

// Assembles the elastic system (stiffness on free dofs, rhs) for given chi, D at time t.
void assemble_elastic_system(double t, const std::vector<double>& chi,
                             const std::vector<SymTensor2>& d, const Scenario& sc,
                             const FreeDofs& f, std::vector<double>& a, std::vector<double>& rhs) {
  const Mesh& m = sc.mesh;
  const size_t nf = f.list.size();
  a.assign(nf * nf, 0.0);
  rhs.assign(nf, 0.0);
  const SymTensor2 ed = sc.e_D(t);
  const int nv = m.verts_per_elem();
  for (int e = 0; e < m.n_elems(); ++e) {
    const double chie = element_chi(m, e, chi);
    const SymTensor2 de = element_d(m, e, d);
    const Tensor4 ke = eval_stiffness(sc.mat, m.dim, chie);
    const SymTensor2 ce = ed - eval_xi(chie, de);
    const SymTensor2 kce = ke.apply(ce);
    std::vector<SymTensor2> b;
    std::vector<int> dof;
    for (int v = 0; v < nv; ++v)
      for (int c = 0; c < m.dim; ++c) {
        b.push_back(unit_strain(m, e, v, c));
        dof.push_back(m.elems[e][v] * m.dim + c);
      }
    std::vector<SymTensor2> kb(b.size());
    for (size_t i = 0; i < b.size(); ++i) kb[i] = ke.apply(b[i]);
    for (size_t i = 0; i < b.size(); ++i) {
      const int fi = f.map[dof[i]];
      if (fi < 0) continue;
      rhs[fi] -= m.elem_vol[e] * frob_inner(kce, b[i]);
      for (size_t j = 0; j < b.size(); ++j) {
        const int fj = f.map[dof[j]];
        if (fj < 0) continue;
        a[static_cast<size_t>(fi) * nf + fj] += m.elem_vol[e] * frob_inner(kb[j], b[i]);
      }
    }
  }
  const std::vector<double> f0 = assemble_load_vector(sc);
  const double pf = sc.f_profile.value(t);
  for (size_t i = 0; i < nf; ++i) rhs[i] += pf * f0[f.list[i]];
}

void require_conforming(const StateFields& fields, const Scenario& sc, const char* where) {
  if (!fields.conforms(sc.mesh)) throw DomainError(std::string(where) + ": non-conforming field sizes");
}

}  // namespace

std::vector<double> assemble_load_vector(const Scenario& sc) {
  const Mesh& m = sc.mesh;
  std::vector<double> f0(static_cast<size_t>(m.dim) * m.n_nodes(), 0.0);
  const double fv[2] = {sc.volume_force_x, sc.volume_force_y};
  // volume force, one-point quadrature
  const int nv = m.verts_per_elem();
  for (int e = 0; e < m.n_elems(); ++e)
    for (int v = 0; v < nv; ++v)
      for (int c = 0; c < m.dim; ++c)
        f0[static_cast<size_t>(m.elems[e][v]) * m.dim + c] += m.elem_vol[e] / nv * fv[c];
  // boundary traction
  const double tr[2] = {sc.traction_x, sc.traction_y};
  if (tr[0] != 0.0 || tr[1] != 0.0) {
    if (m.dim == 1) {
      for (int n : m.side_nodes(sc.traction_side)) f0[static_cast<size_t>(n) * m.dim] += tr[0];
    } else {
      for (const auto& edge : m.side_edges(sc.traction_side)) {
        const auto& p0 = m.nodes[edge[0]];
        const auto& p1 = m.nodes[edge[1]];
        const double len = std::hypot(p1[0] - p0[0], p1[1] - p0[1]);
        for (int k = 0; k < 2; ++k)
          for (int c = 0; c < m.dim; ++c)
            f0[static_cast<size_t>(edge[k]) * m.dim + c] += 0.5 * len * tr[c];
      }
    }
  }
  for (int n = 0; n < m.n_nodes(); ++n)
    if (m.dirichlet[n])
      for (int c = 0; c < m.dim; ++c) f0[static_cast<size_t>(n) * m.dim + c] = 0.0;
  return f0;
}

bool fields_feasible(const StateFields& fields, const Scenario& sc, std::string* why) {
  const Mesh& m = sc.mesh;
  if (!fields.conforms(m)) {
    if (why) *why = "non-conforming field sizes";
    return false;
  }
  for (int n = 0; n < m.n_nodes(); ++n) {
    if (!(fields.chi[n] >= 0.0 && fields.chi[n] <= 1.0)) {
      if (why) *why = "chi outside [0,1] at node " + std::to_string(n);
      return false;
    }
    const SymTensor2& dn = fields.d[n];
    if ((dn - sc.mat.subspace.project(dn)).norm() > 1e-12 * (1.0 + dn.norm())) {
      if (why) *why = "D outside subspace S at node " + std::to_string(n);
      return false;
    }
    if (!sc.mat.k_set.contains(dn)) {
      if (why) *why = "D outside convex set K at node " + std::to_string(n);
      return false;
    }
    if (m.dirichlet[n])
      for (int c = 0; c < m.dim; ++c)
        if (fields.u[static_cast<size_t>(n) * m.dim + c] != 0.0) {
          if (why) *why = "u nonzero on Gamma_D at node " + std::to_string(n);
          return false;
        }
  }
  return true;
}

double smooth_energy(double t, const StateFields& fields, const Scenario& sc) {
  require_conforming(fields, sc, "smooth_energy");
  const Mesh& m = sc.mesh;
  const SymTensor2 ed = sc.e_D(t);
  double w_part = 0.0, j_part = 0.0, g_part = 0.0, h_part = 0.0;
  for (int e = 0; e < m.n_elems(); ++e) {
    const double vol = m.elem_vol[e];
    const double chie = element_chi(m, e, fields.chi);
    const SymTensor2 de = element_d(m, e, fields.d);
    const Tensor4 ke = eval_stiffness(sc.mat, m.dim, std::clamp(chie, 0.0, 1.0));
    const SymTensor2 ae = element_strain(m, e, fields.u) + ed - de * (1.0 - chie);
    w_part += 0.5 * vol * quad_form(ke, ae, ae);
    const auto gchi = element_grad_chi(m, e, fields.chi);
    double g2 = 0.0;
    for (double g : gchi) g2 += g * g;
    j_part += vol * (0.5 * sc.mat.alpha * g2 + sc.mat.w1(std::clamp(chie, 0.0, 1.0)));
    const auto gd = element_grad_d(m, e, fields.d);
    double gd2 = 0.0;
    for (const auto& g : gd) gd2 += g.norm2();
    const double well = de.norm2() - 1.0;
    const double grad_term = (sc.mat.q == 2.0) ? 0.5 * gd2 : std::pow(gd2, 0.5 * sc.mat.q) / sc.mat.q;
    g_part += vol * (sc.mat.quartic_weight * well * well + grad_term);
    const double om = 1.0 - chie;
    h_part += vol * (sc.mat.w * om + 0.5 * de.norm2() * om);
  }
  const std::vector<double> f0 = assemble_load_vector(sc);
  const double pf = sc.f_profile.value(t);
  double work = 0.0;
  for (size_t i = 0; i < f0.size(); ++i) work += f0[i] * fields.u[i];
  return w_part - pf * work + j_part + g_part + h_part;
}

EnergyBreakdown assemble_energy(double t, const StateFields& fields, const Scenario& sc) {
  require_conforming(fields, sc, "assemble_energy");
  const Mesh& m = sc.mesh;
  EnergyBreakdown b;
  std::string why;
  bool chi_ok = true, d_ok = true;
  for (int n = 0; n < m.n_nodes(); ++n) {
    if (!(fields.chi[n] >= 0.0 && fields.chi[n] <= 1.0)) chi_ok = false;
    const SymTensor2& dn = fields.d[n];
    if ((dn - sc.mat.subspace.project(dn)).norm() > 1e-12 * (1.0 + dn.norm()) ||
        !sc.mat.k_set.contains(dn))
      d_ok = false;
  }
  if (!chi_ok || !d_ok) {
    b.elastic_minus_work = 0.0;
    b.damage = chi_ok ? 0.0 : kInf;
    b.plastic = d_ok ? 0.0 : kInf;
    b.coupling = 0.0;
    b.total = kInf;
    return b;
  }

  const SymTensor2 ed = sc.e_D(t);
  for (int e = 0; e < m.n_elems(); ++e) {
    const double vol = m.elem_vol[e];
    const double chie = element_chi(m, e, fields.chi);
    const SymTensor2 de = element_d(m, e, fields.d);
    const Tensor4 ke = eval_stiffness(sc.mat, m.dim, chie);
    const SymTensor2 ae = element_strain(m, e, fields.u) + ed - eval_xi(chie, de);
    b.elastic_minus_work += 0.5 * vol * quad_form(ke, ae, ae);
    b.damage += vol * eval_J_density(sc.mat, chie, element_grad_chi(m, e, fields.chi));
    b.plastic += vol * eval_G_density(sc.mat, de, element_grad_d(m, e, fields.d));
    b.coupling += vol * eval_H(sc.mat, chie, de);
  }
  const std::vector<double> f0 = assemble_load_vector(sc);
  const double pf = sc.f_profile.value(t);
  double work = 0.0;
  for (size_t i = 0; i < f0.size(); ++i) work += f0[i] * fields.u[i];
  b.elastic_minus_work -= pf * work;
  b.total = b.elastic_minus_work + b.damage + b.plastic + b.coupling;
  return b;
}

double assemble_power(double t, const StateFields& fields, const Scenario& sc) {
  require_conforming(fields, sc, "assemble_power");
  const Mesh& m = sc.mesh;
  const SymTensor2 ed = sc.e_D(t);
  const SymTensor2 ed_dot = sc.dt_e_D(t);
  double p = 0.0;
  for (int e = 0; e < m.n_elems(); ++e) {
    const double chie = element_chi(m, e, fields.chi);
    const SymTensor2 de = element_d(m, e, fields.d);
    const Tensor4 ke = eval_stiffness(sc.mat, m.dim, chie);
    const SymTensor2 ae = element_strain(m, e, fields.u) + ed - eval_xi(chie, de);
    p += m.elem_vol[e] * frob_inner(ke.apply(ae), ed_dot);
  }
  const std::vector<double> f0 = assemble_load_vector(sc);
  const double pf_dot = sc.f_profile.derivative(t);
  double work = 0.0;
  for (size_t i = 0; i < f0.size(); ++i) work += f0[i] * fields.u[i];
  return p - pf_dot * work;
}

std::vector<double> elastic_solve(double t, const std::vector<double>& chi,
                                  const std::vector<SymTensor2>& d, const Scenario& sc) {
  const Mesh& m = sc.mesh;
  if (chi.size() != static_cast<size_t>(m.n_nodes()) || d.size() != chi.size())
    throw DomainError("elastic_solve: non-conforming field sizes");
  const FreeDofs f = free_dofs(m);
  std::vector<double> a, rhs;
  assemble_elastic_system(t, chi, d, sc, f, a, rhs);
  const std::vector<double> x = cg_solve(a, rhs, 1e-10, "elastic_solve");
  std::vector<double> u(static_cast<size_t>(m.dim) * m.n_nodes(), 0.0);
  for (size_t i = 0; i < f.list.size(); ++i) u[f.list[i]] = x[i];
  return u;
}

GradientBlocks energy_gradient_blocks(double t, const StateFields& fields, const Scenario& sc) {
  require_conforming(fields, sc, "energy_gradient_blocks");
  std::string why;
  if (!fields_feasible(fields, sc, &why))
    throw DomainError("energy_gradient_blocks: infeasible fields (" + why + ")");
  const Mesh& m = sc.mesh;
  const int nv = m.verts_per_elem();
  GradientBlocks g;
  g.u.assign(static_cast<size_t>(m.dim) * m.n_nodes(), 0.0);
  g.chi.assign(m.n_nodes(), 0.0);
  g.d.assign(m.n_nodes(), SymTensor2::zero(m.dim));

  const SymTensor2 ed = sc.e_D(t);
  const std::vector<double> f0 = assemble_load_vector(sc);
  const double pf = sc.f_profile.value(t);

  for (int e = 0; e < m.n_elems(); ++e) {
    const double vol = m.elem_vol[e];
    const double chie = element_chi(m, e, fields.chi);
    const SymTensor2 de = element_d(m, e, fields.d);
    const Tensor4 ke = eval_stiffness(sc.mat, m.dim, chie);
    const Tensor4 kpe = eval_stiffness_chi_derivative(sc.mat, m.dim, chie);
    const SymTensor2 ae = element_strain(m, e, fields.u) + ed - eval_xi(chie, de);
    const SymTensor2 kae = ke.apply(ae);

    // u block: vol * (K a) : B(v,c), minus the load below.
    for (int v = 0; v < nv; ++v)
      for (int c = 0; c < m.dim; ++c)
        g.u[static_cast<size_t>(m.elems[e][v]) * m.dim + c] +=
            vol * frob_inner(kae, unit_strain(m, e, v, c));

    // chi block: elastic chi-derivative + H + W1 + damage gradient term.
    const double elastic_chi = 0.5 * quad_form(kpe, ae, ae) + frob_inner(kae, de);
    const double h_chi = -sc.mat.w - 0.5 * de.norm2();
    const double w1p = sc.mat.w1_prime(chie);
    const auto gchi = element_grad_chi(m, e, fields.chi);
    for (int v = 0; v < nv; ++v) {
      const int node = m.elems[e][v];
      double val = vol / nv * (elastic_chi + h_chi + w1p);
      for (int mdir = 0; mdir < m.dim; ++mdir)
        val += vol * sc.mat.alpha * gchi[mdir] * m.shape_grad[e][v][mdir];
      g.chi[node] += val;
    }

    // D block: elastic D-derivative + H + quartic well + plastic gradient term.
    const auto gd = element_grad_d(m, e, fields.d);
    double gd2 = 0.0;
    for (const auto& gg : gd) gd2 += gg.norm2();
    const double qfac = (sc.mat.q == 2.0) ? 1.0
                                          : (gd2 > 0.0 ? std::pow(gd2, 0.5 * sc.mat.q - 1.0) : 0.0);
    SymTensor2 point_part = kae * (-(1.0 - chie));       // elastic
    point_part.axpy(1.0 - chie, de);                      // H
    point_part.axpy(4.0 * sc.mat.quartic_weight * (de.norm2() - 1.0), de);  // well
    for (int v = 0; v < nv; ++v) {
      const int node = m.elems[e][v];
      SymTensor2 val = point_part * (vol / nv);
      for (int mdir = 0; mdir < m.dim; ++mdir)
        val.axpy(vol * qfac * m.shape_grad[e][v][mdir], gd[mdir]);
      g.d[node] += val;
    }
  }

  for (int n = 0; n < m.n_nodes(); ++n) {
    if (m.dirichlet[n])
      for (int c = 0; c < m.dim; ++c) g.u[static_cast<size_t>(n) * m.dim + c] = 0.0;
    else
      for (int c = 0; c < m.dim; ++c)
        g.u[static_cast<size_t>(n) * m.dim + c] -= pf * f0[static_cast<size_t>(n) * m.dim + c];
    g.d[n] = sc.mat.subspace.project(g.d[n]);
  }
  return g;
}

double load_dual_norm(const Scenario& sc) {
  const Mesh& m = sc.mesh;
  const FreeDofs f = free_dofs(m);
  const size_t nf = f.list.size();
  if (nf == 0) return 0.0;
  const std::vector<double> f0_full = assemble_load_vector(sc);
  std::vector<double> f0(nf);
  for (size_t i = 0; i < nf; ++i) f0[i] = f0_full[f.list[i]];
  double f0_norm2 = 0.0;
  for (double v : f0) f0_norm2 += v * v;
  if (f0_norm2 == 0.0) return 0.0;
  // Gram matrix of <e(u), e(v)> = stiffness with the symmetric identity tensor.
  std::vector<double> a(nf * nf, 0.0);
  const Tensor4 id = Tensor4::identity(m.dim);
  const int nv = m.verts_per_elem();
  for (int e = 0; e < m.n_elems(); ++e) {
    std::vector<SymTensor2> b;
    std::vector<int> dof;
    for (int v = 0; v < nv; ++v)
      for (int c = 0; c < m.dim; ++c) {
        b.push_back(unit_strain(m, e, v, c));
        dof.push_back(m.elems[e][v] * m.dim + c);
      }
    for (size_t i = 0; i < b.size(); ++i) {
      const int fi = f.map[dof[i]];
      if (fi < 0) continue;
      for (size_t j = 0; j < b.size(); ++j) {
        const int fj = f.map[dof[j]];
        if (fj < 0) continue;
        a[static_cast<size_t>(fi) * nf + fj] += m.elem_vol[e] * quad_form(id, b[i], b[j]);
      }
    }
  }
  const std::vector<double> x = cg_solve(a, f0, 1e-12, "load_dual_norm");
  double s = 0.0;
  for (size_t i = 0; i < nf; ++i) s += f0[i] * x[i];
  return std::sqrt(std::max(0.0, s));
}

double lumped_dissipation(const Scenario& sc, const StateFields& z_new, const StateFields& z_old) {
  const Mesh& m = sc.mesh;
  double total = 0.0;
  for (int n = 0; n < m.n_nodes(); ++n) {
    const double dchi = z_new.chi[n] - z_old.chi[n];
    if (dchi > 0.0) return kInf;
    const SymTensor2 dd = z_new.d[n] - z_old.d[n];
    total += m.node_weight[n] * (sc.mat.nu_diss * std::abs(dchi) + sc.mat.mu_diss * dd.norm());
  }
  return total;
}

double u_energy_norm(const std::vector<double>& u, const Scenario& sc) {
  const Mesh& m = sc.mesh;
  double s = 0.0;
  for (int e = 0; e < m.n_elems(); ++e) s += m.elem_vol[e] * element_strain(m, e, u).norm2();
  return std::sqrt(s);
}

double d_l2_norm(const std::vector<SymTensor2>& d, const Scenario& sc) {
  const Mesh& m = sc.mesh;
  double s = 0.0;
  for (int e = 0; e < m.n_elems(); ++e) s += m.elem_vol[e] * element_d(m, e, d).norm2();
  return std::sqrt(s);
}

double chi_l2_norm(const std::vector<double>& chi, const Scenario& sc) {
  const Mesh& m = sc.mesh;
  double s = 0.0;
  for (int e = 0; e < m.n_elems(); ++e) {
    const double c = element_chi(m, e, chi);
    s += m.elem_vol[e] * c * c;
  }
  return std::sqrt(s);
}

double loads_scale(const Scenario& sc) {
  const double t_end = sc.time.horizon;
  const std::vector<double> f0 = assemble_load_vector(sc);
  double f0n = 0.0;
  for (double v : f0) f0n += v * v;
  f0n = std::sqrt(f0n);
  const double k2 = sc.mat.stiffness_upper(sc.dim);
  return sc.f_profile.max_abs_value(t_end) * f0n +
         sc.uD_profile.max_abs_value(t_end) * sc.e_D0.norm() * k2 * std::sqrt(sc.mesh.volume());
}

}  // namespace dampl
