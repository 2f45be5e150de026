#ifndef DAMPL_CONSTITUTIVE_HPP
#define DAMPL_CONSTITUTIVE_HPP

#include <limits>
#include <string>
#include <vector>

#include "dampl/tensor.hpp"

namespace dampl {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class W1Variant { Inhibit, DoubleWell };

// Material and model parameters. The chi-dependent stiffness is
// K(chi) = g(chi) * K0 with g(chi) = k_min + (1-k_min) chi^2 and K0 the
// isotropic tensor built from (lame_lambda, lame_mu); K(chi) stays positive
// definite for every chi in [0,1] because k_min > 0.
struct MaterialParams {
  double lame_lambda = 0.0;
  double lame_mu = 0.5;
  double k_min = 1.0;        // residual stiffness fraction in (0,1]
  double w = 1.0;            // cohesion energy density, > 0
  double alpha = 0.01;       // damage gradient weight, > 0
  double beta = 0.0;         // damage potential weight, >= 0
  W1Variant w1_variant = W1Variant::DoubleWell;
  double mu_diss = 0.1;      // plastic dissipation coefficient, > 0
  double nu_diss = 0.1;      // damage dissipation coefficient, > 0
  double r = 2.0;            // damage gradient exponent, fixed at 2
  double q = 2.0;            // plastic gradient exponent in [2d/(d+2), 4]
  double quartic_weight = 1.0;  // weight of the (|D|^2-1)^2 well, >= 0
  SubspaceS subspace;
  ConvexSetK k_set;

  double g(double chi) const { return k_min + (1.0 - k_min) * chi * chi; }
  double g_prime(double chi) const { return 2.0 * (1.0 - k_min) * chi; }

  Tensor4 base_stiffness(int dim) const { return Tensor4::isotropic(dim, lame_lambda, lame_mu); }

  // Eigenvalue bounds of K(chi) over chi in [0,1] (lambda >= 0 assumed).
  double stiffness_lower(int dim) const {
    (void)dim;
    return k_min * 2.0 * lame_mu;
  }
  double stiffness_upper(int dim) const { return dim * lame_lambda + 2.0 * lame_mu; }

  double w1(double chi) const {
    const double om = 1.0 - chi;
    if (beta == 0.0) return 0.0;
    if (w1_variant == W1Variant::Inhibit) return (beta / alpha) * om * om;
    return (beta / alpha) * chi * chi * om * om;
  }
  double w1_prime(double chi) const {
    const double om = 1.0 - chi;
    if (beta == 0.0) return 0.0;
    if (w1_variant == W1Variant::Inhibit) return -2.0 * (beta / alpha) * om;
    return (beta / alpha) * (2.0 * chi * om * om - 2.0 * chi * chi * om);
  }

  // Parameter conditions; dim is the mesh dimension. Returns all violations.
  std::vector<std::string> validate(int dim) const;
};

// Pointwise state carried at a quadrature point.
struct PointState {
  double chi = 1.0;
  SymTensor2 d_tensor;
  std::vector<double> grad_chi;          // spatial gradient of chi
  std::vector<SymTensor2> grad_d;        // per spatial direction: d(D)/dx_m
};

void require_chi_in_unit(double chi, const char* where);

// Xi(chi, D) = (1-chi) D
SymTensor2 eval_xi(double chi, const SymTensor2& d_tensor);

struct XiPartials {
  SymTensor2 dxi_dchi;   // = -D
  double dxi_dD_scale;   // dXi/dD acts as A -> scale * A with scale = 1-chi
};
XiPartials xi_partials(double chi, const SymTensor2& d_tensor);

// K(chi) = g(chi) * K0
Tensor4 eval_stiffness(const MaterialParams& p, int dim, double chi);
// d/dchi K(chi) = g'(chi) * K0
Tensor4 eval_stiffness_chi_derivative(const MaterialParams& p, int dim, double chi);

// H(chi, D) = w (1-chi) + 1/2 |D|^2 (1-chi)
double eval_H(const MaterialParams& p, double chi, const SymTensor2& d_tensor);
struct HPartials {
  double dH_dchi;
  SymTensor2 dH_dD;
};
HPartials H_partials(const MaterialParams& p, double chi, const SymTensor2& d_tensor);

// J density: +inf outside [0,1], else alpha/2 |grad chi|^2 + W1(chi).
double eval_J_density(const MaterialParams& p, double chi, const std::vector<double>& grad_chi);

// G density: +inf outside K, else quartic_weight (|D|^2-1)^2 + (1/q) |grad D|^q.
double eval_G_density(const MaterialParams& p, const SymTensor2& d_tensor,
                      const std::vector<SymTensor2>& grad_d);

// Pointwise dissipation rate: +inf if delta_chi > 0, else nu |delta_chi| + mu |delta_D|.
double eval_dissipation_rate(const MaterialParams& p, double delta_chi, const SymTensor2& delta_d);

}  // namespace dampl

#endif
