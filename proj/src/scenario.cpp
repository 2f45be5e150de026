#include "dampl/scenario.hpp"

#include <algorithm>
#include <cmath>

namespace dampl {

namespace {

// Piecewise-linear base with quadratic corner blending. Corners are given as
// (position, slope before, slope after); base value at the leftmost time is 0.
struct Piecewise {
  double v0 = 0.0;
  std::vector<std::array<double, 3>> corners;  // (c, s0, s1)
  double half_blend = 0.0;

  // v0 is the value at the first corner.
  double linear_value(double t) const {
    if (corners.empty()) return v0;
    const double c0 = corners.front()[0];
    if (t <= c0) return v0 + corners.front()[1] * (t - c0);
    double val = v0;
    double pos = c0;
    for (size_t i = 0; i < corners.size(); ++i) {
      const double next = (i + 1 < corners.size()) ? corners[i + 1][0] : t;
      const double upto = std::min(t, next);
      val += corners[i][2] * (upto - pos);
      pos = upto;
      if (t <= next) break;
    }
    return val;
  }

  double value(double t) const {
    for (const auto& k : corners) {
      const double c = k[0], s0 = k[1], s1 = k[2], h = half_blend;
      if (h > 0.0 && t > c - h && t < c + h) {
        const double fl = linear_value(c - h);
        const double x = t - (c - h);
        return fl + s0 * x + (s1 - s0) * x * x / (4.0 * h);
      }
    }
    return linear_value(t);
  }

  double derivative(double t) const {
    for (const auto& k : corners) {
      const double c = k[0], s0 = k[1], s1 = k[2], h = half_blend;
      if (h > 0.0 && t > c - h && t < c + h)
        return s0 + (s1 - s0) * (t - (c - h)) / (2.0 * h);
      if (t <= c) return s0;
    }
    return corners.empty() ? 0.0 : corners.back()[2];
  }
};

Piecewise make_piecewise(const TimeProfile& p) {
  Piecewise pw;
  pw.half_blend = 0.5 * p.blend;
  const double k = 1.0 / (p.t1 - p.t0);
  if (p.kind == TimeProfile::Kind::Ramp) {
    pw.v0 = 0.0;
    pw.corners.push_back({p.t0, 0.0, k});
  } else if (p.kind == TimeProfile::Kind::RampHold) {
    pw.v0 = 0.0;
    pw.corners.push_back({p.t0, 0.0, k});
    pw.corners.push_back({p.t1, k, 0.0});
  }
  return pw;
}

}  // namespace

double TimeProfile::value(double t) const {
  if (kind == Kind::Constant) return 1.0;
  return make_piecewise(*this).value(t);
}

double TimeProfile::derivative(double t) const {
  if (kind == Kind::Constant) return 0.0;
  return make_piecewise(*this).derivative(t);
}

double TimeProfile::max_abs_value(double horizon) const {
  if (kind == Kind::Constant) return 1.0;
  // Both ramp kinds are nondecreasing; blending preserves monotonicity.
  return std::abs(value(horizon));
}

double TimeProfile::max_abs_derivative(double horizon) const {
  (void)horizon;
  if (kind == Kind::Constant) return 0.0;
  return 1.0 / (t1 - t0);
}

std::vector<CompetitorSpec> VerifyConfig::competitor_specs() const {
  std::vector<CompetitorSpec> specs;
  CompetitorSpec s;
  s.count = competitors_per_family;
  s.kind = CompetitorSpec::Kind::UniformDamageDrop;
  s.delta = drop_delta;
  specs.push_back(s);
  s.kind = CompetitorSpec::Kind::Recovery;
  s.target = recovery_target;
  s.delta0 = recovery_delta0;
  specs.push_back(s);
  s.kind = CompetitorSpec::Kind::RandomPerturbation;
  s.scale = perturb_scale;
  s.seed = seed;
  specs.push_back(s);
  s.kind = CompetitorSpec::Kind::DPerturbation;
  s.scale = d_perturb_scale;
  s.seed = seed + 1;
  specs.push_back(s);
  s.kind = CompetitorSpec::Kind::ElasticRebalance;
  s.count = 1;
  specs.push_back(s);
  return specs;
}

void Scenario::finalize() {
  std::vector<std::string> issues;

  if (dim != 1 && dim != 2) issues.push_back("mesh dim must be 1 or 2");
  if (elements_x < 1 || (dim == 2 && elements_y < 1))
    issues.push_back("mesh subdivisions must be >= 1");
  if (!(length_x > 0.0) || (dim == 2 && !(length_y > 0.0)))
    issues.push_back("mesh extents must be > 0");
  if (dirichlet_sides.empty())
    issues.push_back("Gamma_D is empty; the Dirichlet boundary must be nonempty and relatively open");
  if (dim == 1)
    for (Side s : dirichlet_sides)
      if (s == Side::Bottom || s == Side::Top)
        issues.push_back("1D meshes only have left/right sides");

  if (dim == 1 || dim == 2) {
    auto mat_issues = mat.validate(dim);
    issues.insert(issues.end(), mat_issues.begin(), mat_issues.end());
  }

  if (!(time.horizon > 0.0)) issues.push_back("time horizon must be > 0");
  if (time.n_steps < 1) issues.push_back("time steps must be >= 1");

  const double dt = (time.n_steps >= 1 && time.horizon > 0.0) ? time.dt() : 0.0;
  double blend = blend_width < 0.0 ? 2.0 * dt : blend_width;
  for (auto [kind, t0, t1, name] :
       {std::tuple{uD_kind, uD_t0, uD_t1, "dirichlet"}, std::tuple{f_kind, f_t0, f_t1, "force"}}) {
    if (kind != TimeProfile::Kind::Constant) {
      if (!(t1 > t0)) issues.push_back(std::string(name) + " profile needs t1 > t0");
      else if (blend > (t1 - t0))
        issues.push_back(std::string(name) + " profile blend width exceeds the ramp interval");
    }
  }

  if (!(chi0 >= 0.0 && chi0 <= 1.0)) issues.push_back("initial chi must lie in [0,1]");

  if (!(solver.am_tol > 0.0) || solver.am_max_sweeps < 1 || !(solver.prox_step_init > 0.0) ||
      !(solver.backtrack_factor > 0.0 && solver.backtrack_factor < 1.0) ||
      solver.prox_max_iters < 1 || !(solver.stationarity_tol > 0.0))
    issues.push_back("solver config entries must be positive with backtrack_factor in (0,1)");

  if (verification.competitors_per_family < 1 || verification.samples < 1 ||
      verification.drop_delta < 0.0 || verification.perturb_scale < 0.0 ||
      verification.d_perturb_scale < 0.0 || verification.recovery_delta0 < 0.0)
    issues.push_back("verification config entries must be nonnegative with counts >= 1");

  if (!issues.empty()) throw ValidationError(issues);

  mesh = build_mesh(dim, length_x, length_y, elements_x, elements_y, dirichlet_sides);

  uD_profile = {uD_kind, uD_t0, uD_t1, uD_kind == TimeProfile::Kind::Constant ? 0.0 : blend};
  f_profile = {f_kind, f_t0, f_t1, f_kind == TimeProfile::Kind::Constant ? 0.0 : blend};

  e_D0 = SymTensor2(dim);
  switch (uD_mode) {
    case DirichletMode::UniaxialX: e_D0.set(0, 0, uD_amplitude); break;
    case DirichletMode::UniaxialY:
      if (dim < 2) throw ValidationError({"uniaxial-y Dirichlet mode requires dim 2"});
      e_D0.set(1, 1, uD_amplitude);
      break;
    case DirichletMode::ShearXY:
      if (dim < 2) throw ValidationError({"shear-xy Dirichlet mode requires dim 2"});
      e_D0.set(0, 1, uD_amplitude);
      break;
    case DirichletMode::Isotropic:
      for (int i = 0; i < dim; ++i) e_D0.set(i, i, uD_amplitude);
      break;
  }

  SymTensor2 d_init(dim);
  d_init.set(0, 0, d0_xx);
  if (dim == 2) {
    d_init.set(1, 1, d0_yy);
    d_init.set(0, 1, d0_xy);
  }
  d0 = mat.k_set.project(mat.subspace.project(d_init));
  if ((d0 - d_init).norm() > 1e-12 * (1.0 + d_init.norm()))
    throw ValidationError({"initial plastic strain is not in K intersect S"});

  finalized = true;
}

}  // namespace dampl
