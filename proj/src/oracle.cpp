#include "dampl/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace dampl {

namespace {

void add_unique(std::vector<double>& vals, double v) {
  for (double x : vals)
    if (x == v) return;
  vals.push_back(v);
}

}  // namespace

OracleResult oracle_minimize(double t, const StateFields& prev, const Scenario& sc, int levels) {
  std::string why;
  if (!fields_feasible(prev, sc, &why))
    throw DomainError("oracle_minimize: previous state infeasible (" + why + ")");
  if (levels < 2) throw DomainError("oracle_minimize: need at least 2 quantization levels");

  const Mesh& m = sc.mesh;
  const std::vector<SymTensor2> sbasis = sc.mat.subspace.basis(m.dim);
  const int s_comps = static_cast<int>(sbasis.size());
  const int n_unknowns = m.n_nodes() * (1 + s_comps);
  if (n_unknowns > 8 || levels > 21)
    throw DomainError("oracle_minimize: instance too large (" + std::to_string(n_unknowns) +
                      " internal unknowns, " + std::to_string(levels) +
                      " levels; guards are 8 unknowns and 21 levels)");

  const double span = sc.mat.k_set.variant == ConvexSetK::Variant::FrobeniusBall
                          ? sc.mat.k_set.radius
                          : 1.5;

  // per-unknown value lists: chi grids first, then D coordinates node by node
  std::vector<std::vector<double>> grids;
  for (int n = 0; n < m.n_nodes(); ++n) {
    std::vector<double> vals;
    for (int i = 0; i < levels; ++i) vals.push_back(prev.chi[n] * i / (levels - 1));
    add_unique(vals, prev.chi[n]);
    grids.push_back(vals);
  }
  for (int n = 0; n < m.n_nodes(); ++n)
    for (int k = 0; k < s_comps; ++k) {
      std::vector<double> vals;
      for (int i = 0; i < levels; ++i) vals.push_back(-span + 2.0 * span * i / (levels - 1));
      add_unique(vals, frob_inner(prev.d[n], sbasis[k]));
      grids.push_back(vals);
    }

  double combos = 1.0;
  for (const auto& g : grids) combos *= static_cast<double>(g.size());
  if (combos > 2e7)
    throw DomainError("oracle_minimize: instance too large (" + std::to_string(combos) +
                      " grid combinations; guard is 2e7)");

  OracleResult best;
  best.objective = kInf;
  std::vector<size_t> idx(grids.size(), 0);
  StateFields cand = prev;
  while (true) {
    bool feasible = true;
    for (int n = 0; n < m.n_nodes(); ++n) cand.chi[n] = grids[n][idx[n]];
    for (int n = 0; n < m.n_nodes() && feasible; ++n) {
      SymTensor2 d(m.dim);
      for (int k = 0; k < s_comps; ++k)
        d.axpy(grids[m.n_nodes() + n * s_comps + k][idx[m.n_nodes() + n * s_comps + k]], sbasis[k]);
      if (!sc.mat.k_set.contains(d)) feasible = false;
      cand.d[n] = d;
    }
    if (feasible) {
      cand.u = elastic_solve(t, cand.chi, cand.d, sc);
      const double obj = smooth_energy(t, cand, sc) + lumped_dissipation(sc, cand, prev);
      ++best.candidates_evaluated;
      if (obj < best.objective) {
        best.objective = obj;
        best.fields = cand;
      }
    }
    size_t k = 0;
    while (k < idx.size() && ++idx[k] == grids[k].size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return best;
}

StateFields snap_to_grid(const StateFields& q, const StateFields& prev, const Scenario& sc,
                         int levels) {
  const Mesh& m = sc.mesh;
  const std::vector<SymTensor2> sbasis = sc.mat.subspace.basis(m.dim);
  const double span = sc.mat.k_set.variant == ConvexSetK::Variant::FrobeniusBall
                          ? sc.mat.k_set.radius
                          : 1.5;
  auto nearest = [](double v, const std::vector<double>& vals) {
    double best = vals.front();
    for (double x : vals)
      if (std::abs(x - v) < std::abs(best - v)) best = x;
    return best;
  };
  StateFields out = q;
  for (int n = 0; n < m.n_nodes(); ++n) {
    std::vector<double> cvals;
    for (int i = 0; i < levels; ++i) cvals.push_back(prev.chi[n] * i / (levels - 1));
    add_unique(cvals, prev.chi[n]);
    out.chi[n] = std::min(nearest(q.chi[n], cvals), prev.chi[n]);
    SymTensor2 d(m.dim);
    for (size_t k = 0; k < sbasis.size(); ++k) {
      std::vector<double> dvals;
      for (int i = 0; i < levels; ++i) dvals.push_back(-span + 2.0 * span * i / (levels - 1));
      add_unique(dvals, frob_inner(prev.d[n], sbasis[k]));
      d.axpy(nearest(frob_inner(q.d[n], sbasis[k]), dvals), sbasis[k]);
    }
    out.d[n] = sc.mat.k_set.project(d);
  }
  return out;
}

}  // namespace dampl
