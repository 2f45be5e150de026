#include "dampl/constitutive.hpp"

#include <cmath>

namespace dampl {

void require_chi_in_unit(double chi, const char* where) {
  if (!(chi >= 0.0 && chi <= 1.0))
    throw DomainError(std::string(where) + ": chi=" + std::to_string(chi) + " outside [0,1]");
}

std::vector<std::string> MaterialParams::validate(int dim) const {
  std::vector<std::string> issues;
  if (!(lame_mu > 0.0)) issues.push_back("lame_mu must be > 0 (stiffness positive definiteness)");
  if (!(lame_lambda >= 0.0)) issues.push_back("lame_lambda must be >= 0");
  if (!(k_min > 0.0 && k_min <= 1.0))
    issues.push_back("k_min must lie in (0,1]: degenerate stiffness K(0)=0 is out of scope");
  if (!(w > 0.0)) issues.push_back("cohesion w must be > 0");
  if (!(alpha > 0.0)) issues.push_back("damage gradient weight alpha must be > 0");
  if (!(beta >= 0.0)) issues.push_back("damage potential weight beta must be >= 0");
  if (!(mu_diss > 0.0)) issues.push_back("plastic dissipation coefficient mu must be > 0");
  if (!(nu_diss > 0.0)) issues.push_back("damage dissipation coefficient nu must be > 0");
  if (r != 2.0) issues.push_back("damage gradient exponent r is fixed at 2");
  const double q_lo = 2.0 * dim / (dim + 2.0);
  if (!(q >= q_lo))
    issues.push_back("plastic gradient exponent q=" + std::to_string(q) +
                     " violates the compact-embedding condition q >= 2d/(d+2) = " +
                     std::to_string(q_lo));
  if (!(q <= 4.0))
    issues.push_back("plastic gradient exponent q must not exceed 4 (growth of the quartic well)");
  if (!(quartic_weight >= 0.0)) issues.push_back("quartic_weight must be >= 0");
  if (k_set.variant == ConvexSetK::Variant::FrobeniusBall && !(k_set.radius > 0.0))
    issues.push_back("ball radius of K must be > 0");
  if (subspace.tag == SubspaceS::Tag::Deviatoric && dim < 2)
    issues.push_back("deviatoric subspace S is trivial in one dimension");
  return issues;
}

SymTensor2 eval_xi(double chi, const SymTensor2& d_tensor) {
  require_chi_in_unit(chi, "eval_xi");
  return d_tensor * (1.0 - chi);
}

XiPartials xi_partials(double chi, const SymTensor2& d_tensor) {
  require_chi_in_unit(chi, "xi_partials");
  XiPartials p;
  p.dxi_dchi = d_tensor * (-1.0);
  p.dxi_dD_scale = 1.0 - chi;
  return p;
}

Tensor4 eval_stiffness(const MaterialParams& p, int dim, double chi) {
  require_chi_in_unit(chi, "eval_stiffness");
  return p.base_stiffness(dim) * p.g(chi);
}

Tensor4 eval_stiffness_chi_derivative(const MaterialParams& p, int dim, double chi) {
  require_chi_in_unit(chi, "eval_stiffness_chi_derivative");
  return p.base_stiffness(dim) * p.g_prime(chi);
}

double eval_H(const MaterialParams& p, double chi, const SymTensor2& d_tensor) {
  require_chi_in_unit(chi, "eval_H");
  const double om = 1.0 - chi;
  return p.w * om + 0.5 * d_tensor.norm2() * om;
}

HPartials H_partials(const MaterialParams& p, double chi, const SymTensor2& d_tensor) {
  require_chi_in_unit(chi, "H_partials");
  HPartials r;
  r.dH_dchi = -p.w - 0.5 * d_tensor.norm2();
  r.dH_dD = d_tensor * (1.0 - chi);
  return r;
}

double eval_J_density(const MaterialParams& p, double chi, const std::vector<double>& grad_chi) {
  if (!(chi >= 0.0 && chi <= 1.0)) return kInf;
  double g2 = 0.0;
  for (double g : grad_chi) g2 += g * g;
  return 0.5 * p.alpha * g2 + p.w1(chi);
}

double eval_G_density(const MaterialParams& p, const SymTensor2& d_tensor,
                      const std::vector<SymTensor2>& grad_d) {
  if (!p.k_set.contains(d_tensor)) return kInf;
  const double well = d_tensor.norm2() - 1.0;
  double g2 = 0.0;
  for (const auto& gd : grad_d) g2 += gd.norm2();
  double grad_term;
  if (p.q == 2.0)
    grad_term = 0.5 * g2;
  else
    grad_term = std::pow(g2, 0.5 * p.q) / p.q;
  return p.quartic_weight * well * well + grad_term;
}

double eval_dissipation_rate(const MaterialParams& p, double delta_chi, const SymTensor2& delta_d) {
  if (delta_chi > 0.0) return kInf;
  return p.nu_diss * std::abs(delta_chi) + p.mu_diss * delta_d.norm();
}

}  // namespace dampl
