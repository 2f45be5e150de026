#ifndef DAMPL_FIELDS_HPP
#define DAMPL_FIELDS_HPP

#include <vector>

#include "dampl/constitutive.hpp"
#include "dampl/mesh.hpp"
#include "dampl/tensor.hpp"

namespace dampl {

// Nodal P1 fields q = (u, chi, D). u vanishes on Gamma_D; the Dirichlet datum
// enters separately through its strain lift e_D(t).
struct StateFields {
  std::vector<double> u;          // dim * n_nodes
  std::vector<double> chi;        // n_nodes
  std::vector<SymTensor2> d;      // n_nodes

  static StateFields zeros(const Mesh& m) {
    StateFields f;
    f.u.assign(static_cast<size_t>(m.dim) * m.n_nodes(), 0.0);
    f.chi.assign(m.n_nodes(), 1.0);
    f.d.assign(m.n_nodes(), SymTensor2::zero(m.dim));
    return f;
  }

  bool conforms(const Mesh& m) const {
    return u.size() == static_cast<size_t>(m.dim) * m.n_nodes() &&
           chi.size() == static_cast<size_t>(m.n_nodes()) && d.size() == chi.size();
  }
};

struct EnergyBreakdown {
  double elastic_minus_work = 0.0;  // W part (may be negative)
  double damage = 0.0;              // J part
  double plastic = 0.0;             // G part
  double coupling = 0.0;            // H part
  double total = 0.0;               // +inf iff an indicator is violated

  bool finite() const { return total < kInf; }
};

}  // namespace dampl

#endif
