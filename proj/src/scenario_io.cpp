#include "dampl/scenario_io.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace dampl {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

struct KeyValue {
  std::string section, key, value;
  int line = 0;
};

// Applies parsed key/value pairs onto a Scenario, collecting every problem.
struct Loader {
  Scenario sc;
  std::vector<std::string> issues;

  void fail(const KeyValue& kv, const std::string& what) {
    issues.push_back("line " + std::to_string(kv.line) + " (" + kv.section + "." + kv.key +
                     "): " + what);
  }

  bool as_double(const KeyValue& kv, double& out) {
    char* end = nullptr;
    const std::string v = kv.value;
    out = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0') {
      fail(kv, "expected a number, got '" + v + "'");
      return false;
    }
    return true;
  }

  bool as_int(const KeyValue& kv, int& out) {
    double d;
    if (!as_double(kv, d)) return false;
    out = static_cast<int>(d);
    if (static_cast<double>(out) != d) {
      fail(kv, "expected an integer, got '" + kv.value + "'");
      return false;
    }
    return true;
  }

  bool as_uint(const KeyValue& kv, unsigned& out) {
    int i;
    if (!as_int(kv, i)) return false;
    if (i < 0) {
      fail(kv, "expected a nonnegative integer");
      return false;
    }
    out = static_cast<unsigned>(i);
    return true;
  }

  bool profile_kind(const KeyValue& kv, TimeProfile::Kind& out) {
    if (kv.value == "constant") out = TimeProfile::Kind::Constant;
    else if (kv.value == "ramp") out = TimeProfile::Kind::Ramp;
    else if (kv.value == "ramp-hold") out = TimeProfile::Kind::RampHold;
    else {
      fail(kv, "expected constant | ramp | ramp-hold");
      return false;
    }
    return true;
  }

  bool side(const KeyValue& kv, const std::string& name, Side& out) {
    try {
      out = side_from_name(name);
      return true;
    } catch (const Error& e) {
      fail(kv, e.what());
      return false;
    }
  }

  void apply(const KeyValue& kv) {
    const std::string& s = kv.section;
    const std::string& k = kv.key;
    double d;
    int i;
    unsigned u;
    if (s == "mesh") {
      if (k == "dim") { if (as_int(kv, i)) sc.dim = i; }
      else if (k == "length_x") { if (as_double(kv, d)) sc.length_x = d; }
      else if (k == "length_y") { if (as_double(kv, d)) sc.length_y = d; }
      else if (k == "elements_x") { if (as_int(kv, i)) sc.elements_x = i; }
      else if (k == "elements_y") { if (as_int(kv, i)) sc.elements_y = i; }
      else if (k == "dirichlet_sides") {
        sc.dirichlet_sides.clear();
        for (const auto& name : split(kv.value, ',')) {
          Side sd;
          if (side(kv, name, sd)) sc.dirichlet_sides.insert(sd);
        }
      } else fail(kv, "unknown key");
    } else if (s == "material") {
      if (k == "lambda") { if (as_double(kv, d)) sc.mat.lame_lambda = d; }
      else if (k == "mu") { if (as_double(kv, d)) sc.mat.lame_mu = d; }
      else if (k == "k_min") { if (as_double(kv, d)) sc.mat.k_min = d; }
      else if (k == "w") { if (as_double(kv, d)) sc.mat.w = d; }
      else if (k == "alpha") { if (as_double(kv, d)) sc.mat.alpha = d; }
      else if (k == "beta") { if (as_double(kv, d)) sc.mat.beta = d; }
      else if (k == "w1") {
        if (kv.value == "inhibit") sc.mat.w1_variant = W1Variant::Inhibit;
        else if (kv.value == "double-well") sc.mat.w1_variant = W1Variant::DoubleWell;
        else fail(kv, "expected inhibit | double-well");
      }
      else if (k == "mu_diss") { if (as_double(kv, d)) sc.mat.mu_diss = d; }
      else if (k == "nu_diss") { if (as_double(kv, d)) sc.mat.nu_diss = d; }
      else if (k == "q") { if (as_double(kv, d)) sc.mat.q = d; }
      else if (k == "quartic_weight") { if (as_double(kv, d)) sc.mat.quartic_weight = d; }
      else if (k == "subspace") {
        if (kv.value == "full") sc.mat.subspace.tag = SubspaceS::Tag::FullSymmetric;
        else if (kv.value == "deviatoric") sc.mat.subspace.tag = SubspaceS::Tag::Deviatoric;
        else fail(kv, "expected full | deviatoric");
      }
      else if (k == "k_set") {
        if (kv.value == "all") sc.mat.k_set.variant = ConvexSetK::Variant::AllOfS;
        else if (kv.value == "ball") sc.mat.k_set.variant = ConvexSetK::Variant::FrobeniusBall;
        else fail(kv, "expected all | ball");
      }
      else if (k == "k_radius") { if (as_double(kv, d)) sc.mat.k_set.radius = d; }
      else fail(kv, "unknown key");
    } else if (s == "loading") {
      if (k == "dirichlet_profile") profile_kind(kv, sc.uD_kind);
      else if (k == "dirichlet_t0") { if (as_double(kv, d)) sc.uD_t0 = d; }
      else if (k == "dirichlet_t1") { if (as_double(kv, d)) sc.uD_t1 = d; }
      else if (k == "dirichlet_amplitude") { if (as_double(kv, d)) sc.uD_amplitude = d; }
      else if (k == "dirichlet_mode") {
        if (kv.value == "uniaxial-x") sc.uD_mode = DirichletMode::UniaxialX;
        else if (kv.value == "uniaxial-y") sc.uD_mode = DirichletMode::UniaxialY;
        else if (kv.value == "shear-xy") sc.uD_mode = DirichletMode::ShearXY;
        else if (kv.value == "isotropic") sc.uD_mode = DirichletMode::Isotropic;
        else fail(kv, "expected uniaxial-x | uniaxial-y | shear-xy | isotropic");
      }
      else if (k == "force_profile") profile_kind(kv, sc.f_kind);
      else if (k == "force_t0") { if (as_double(kv, d)) sc.f_t0 = d; }
      else if (k == "force_t1") { if (as_double(kv, d)) sc.f_t1 = d; }
      else if (k == "volume_force_x") { if (as_double(kv, d)) sc.volume_force_x = d; }
      else if (k == "volume_force_y") { if (as_double(kv, d)) sc.volume_force_y = d; }
      else if (k == "traction_x") { if (as_double(kv, d)) sc.traction_x = d; }
      else if (k == "traction_y") { if (as_double(kv, d)) sc.traction_y = d; }
      else if (k == "traction_side") { Side sd; if (side(kv, kv.value, sd)) sc.traction_side = sd; }
      else if (k == "blend_width") { if (as_double(kv, d)) sc.blend_width = d; }
      else fail(kv, "unknown key");
    } else if (s == "time") {
      if (k == "horizon") { if (as_double(kv, d)) sc.time.horizon = d; }
      else if (k == "steps") { if (as_int(kv, i)) sc.time.n_steps = i; }
      else fail(kv, "unknown key");
    } else if (s == "initial") {
      if (k == "chi") { if (as_double(kv, d)) sc.chi0 = d; }
      else if (k == "d_xx") { if (as_double(kv, d)) sc.d0_xx = d; }
      else if (k == "d_yy") { if (as_double(kv, d)) sc.d0_yy = d; }
      else if (k == "d_xy") { if (as_double(kv, d)) sc.d0_xy = d; }
      else fail(kv, "unknown key");
    } else if (s == "solver") {
      if (k == "am_tol") { if (as_double(kv, d)) sc.solver.am_tol = d; }
      else if (k == "max_sweeps") { if (as_int(kv, i)) sc.solver.am_max_sweeps = i; }
      else if (k == "prox_step") { if (as_double(kv, d)) sc.solver.prox_step_init = d; }
      else if (k == "backtrack") { if (as_double(kv, d)) sc.solver.backtrack_factor = d; }
      else if (k == "prox_max_iters") { if (as_int(kv, i)) sc.solver.prox_max_iters = i; }
      else if (k == "stationarity_tol") { if (as_double(kv, d)) sc.solver.stationarity_tol = d; }
      else fail(kv, "unknown key");
    } else if (s == "verification") {
      if (k == "competitors_per_family") { if (as_int(kv, i)) sc.verification.competitors_per_family = i; }
      else if (k == "seed") { if (as_uint(kv, u)) sc.verification.seed = u; }
      else if (k == "drop_delta") { if (as_double(kv, d)) sc.verification.drop_delta = d; }
      else if (k == "recovery_target") { if (as_double(kv, d)) sc.verification.recovery_target = d; }
      else if (k == "recovery_delta0") { if (as_double(kv, d)) sc.verification.recovery_delta0 = d; }
      else if (k == "perturb_scale") { if (as_double(kv, d)) sc.verification.perturb_scale = d; }
      else if (k == "d_perturb_scale") { if (as_double(kv, d)) sc.verification.d_perturb_scale = d; }
      else if (k == "samples") { if (as_int(kv, i)) sc.verification.samples = i; }
      else fail(kv, "unknown key");
    } else {
      issues.push_back("line " + std::to_string(kv.line) + ": unknown section [" + s + "]");
    }
  }
};

const char* profile_name(TimeProfile::Kind k) {
  switch (k) {
    case TimeProfile::Kind::Constant: return "constant";
    case TimeProfile::Kind::Ramp: return "ramp";
    case TimeProfile::Kind::RampHold: return "ramp-hold";
  }
  return "?";
}

const char* mode_name(DirichletMode m) {
  switch (m) {
    case DirichletMode::UniaxialX: return "uniaxial-x";
    case DirichletMode::UniaxialY: return "uniaxial-y";
    case DirichletMode::ShearXY: return "shear-xy";
    case DirichletMode::Isotropic: return "isotropic";
  }
  return "?";
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot open '" + path + "' for writing");
  return f;
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open '" + path + "' for reading");
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(f, line)) {
    line = trim(line);
    if (!line.empty()) rows.push_back(split(line, ','));
  }
  return rows;
}

double parse_csv_double(const std::string& s, const std::string& path) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw ConfigError("malformed number '" + s + "' in " + path);
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Scenario parse_scenario_text(const std::string& text, const std::string& origin) {
  Loader loader;
  std::stringstream ss(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        loader.issues.push_back("line " + std::to_string(lineno) + ": malformed section header");
        continue;
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      loader.issues.push_back("line " + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    if (section.empty()) {
      loader.issues.push_back("line " + std::to_string(lineno) + ": key outside any section");
      continue;
    }
    KeyValue kv{section, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), lineno};
    loader.apply(kv);
  }
  if (!loader.issues.empty()) {
    for (auto& i : loader.issues) i = origin + ": " + i;
    throw ValidationError(loader.issues);
  }
  loader.sc.finalize();
  return loader.sc;
}

Scenario parse_scenario(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open scenario file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_scenario_text(ss.str(), path);
}

std::string serialize_scenario(const Scenario& sc) {
  std::ostringstream o;
  o << "[mesh]\n";
  o << "dim = " << sc.dim << "\n";
  o << "length_x = " << format_double(sc.length_x) << "\n";
  o << "length_y = " << format_double(sc.length_y) << "\n";
  o << "elements_x = " << sc.elements_x << "\n";
  o << "elements_y = " << sc.elements_y << "\n";
  o << "dirichlet_sides = ";
  bool first = true;
  for (Side s : sc.dirichlet_sides) {
    if (!first) o << ",";
    o << side_name(s);
    first = false;
  }
  o << "\n\n[material]\n";
  o << "lambda = " << format_double(sc.mat.lame_lambda) << "\n";
  o << "mu = " << format_double(sc.mat.lame_mu) << "\n";
  o << "k_min = " << format_double(sc.mat.k_min) << "\n";
  o << "w = " << format_double(sc.mat.w) << "\n";
  o << "alpha = " << format_double(sc.mat.alpha) << "\n";
  o << "beta = " << format_double(sc.mat.beta) << "\n";
  o << "w1 = " << (sc.mat.w1_variant == W1Variant::Inhibit ? "inhibit" : "double-well") << "\n";
  o << "mu_diss = " << format_double(sc.mat.mu_diss) << "\n";
  o << "nu_diss = " << format_double(sc.mat.nu_diss) << "\n";
  o << "q = " << format_double(sc.mat.q) << "\n";
  o << "quartic_weight = " << format_double(sc.mat.quartic_weight) << "\n";
  o << "subspace = "
    << (sc.mat.subspace.tag == SubspaceS::Tag::FullSymmetric ? "full" : "deviatoric") << "\n";
  o << "k_set = " << (sc.mat.k_set.variant == ConvexSetK::Variant::AllOfS ? "all" : "ball") << "\n";
  o << "k_radius = " << format_double(sc.mat.k_set.radius) << "\n";
  o << "\n[loading]\n";
  o << "dirichlet_profile = " << profile_name(sc.uD_kind) << "\n";
  o << "dirichlet_t0 = " << format_double(sc.uD_t0) << "\n";
  o << "dirichlet_t1 = " << format_double(sc.uD_t1) << "\n";
  o << "dirichlet_amplitude = " << format_double(sc.uD_amplitude) << "\n";
  o << "dirichlet_mode = " << mode_name(sc.uD_mode) << "\n";
  o << "force_profile = " << profile_name(sc.f_kind) << "\n";
  o << "force_t0 = " << format_double(sc.f_t0) << "\n";
  o << "force_t1 = " << format_double(sc.f_t1) << "\n";
  o << "volume_force_x = " << format_double(sc.volume_force_x) << "\n";
  o << "volume_force_y = " << format_double(sc.volume_force_y) << "\n";
  o << "traction_x = " << format_double(sc.traction_x) << "\n";
  o << "traction_y = " << format_double(sc.traction_y) << "\n";
  o << "traction_side = " << side_name(sc.traction_side) << "\n";
  o << "blend_width = " << format_double(sc.blend_width) << "\n";
  o << "\n[time]\n";
  o << "horizon = " << format_double(sc.time.horizon) << "\n";
  o << "steps = " << sc.time.n_steps << "\n";
  o << "\n[initial]\n";
  o << "chi = " << format_double(sc.chi0) << "\n";
  o << "d_xx = " << format_double(sc.d0_xx) << "\n";
  o << "d_yy = " << format_double(sc.d0_yy) << "\n";
  o << "d_xy = " << format_double(sc.d0_xy) << "\n";
  o << "\n[solver]\n";
  o << "am_tol = " << format_double(sc.solver.am_tol) << "\n";
  o << "max_sweeps = " << sc.solver.am_max_sweeps << "\n";
  o << "prox_step = " << format_double(sc.solver.prox_step_init) << "\n";
  o << "backtrack = " << format_double(sc.solver.backtrack_factor) << "\n";
  o << "prox_max_iters = " << sc.solver.prox_max_iters << "\n";
  o << "stationarity_tol = " << format_double(sc.solver.stationarity_tol) << "\n";
  o << "\n[verification]\n";
  o << "competitors_per_family = " << sc.verification.competitors_per_family << "\n";
  o << "seed = " << sc.verification.seed << "\n";
  o << "drop_delta = " << format_double(sc.verification.drop_delta) << "\n";
  o << "recovery_target = " << format_double(sc.verification.recovery_target) << "\n";
  o << "recovery_delta0 = " << format_double(sc.verification.recovery_delta0) << "\n";
  o << "perturb_scale = " << format_double(sc.verification.perturb_scale) << "\n";
  o << "d_perturb_scale = " << format_double(sc.verification.d_perturb_scale) << "\n";
  o << "samples = " << sc.verification.samples << "\n";
  return o.str();
}

void write_timeseries(const Trajectory& traj, const std::string& path) {
  std::ofstream f = open_out(path);
  f << "step, t, E_total, W_part, J_part, G_part, H_part, diss_increment, diss_cum, "
       "power_integral, balance_gap, min_chi, max_normD, sweeps, stationarity_residual\n";
  for (const auto& s : traj.steps) {
    double min_chi = 1.0, max_d = 0.0;
    for (double c : s.fields.chi) min_chi = std::min(min_chi, c);
    for (const auto& d : s.fields.d) max_d = std::max(max_d, d.norm());
    f << s.step << ", " << format_double(s.t) << ", " << format_double(s.energy.total) << ", "
      << format_double(s.energy.elastic_minus_work) << ", " << format_double(s.energy.damage)
      << ", " << format_double(s.energy.plastic) << ", " << format_double(s.energy.coupling)
      << ", " << format_double(s.diss_increment) << ", " << format_double(s.diss_cum) << ", "
      << format_double(s.power_integral) << ", " << format_double(s.balance_gap) << ", "
      << format_double(min_chi) << ", " << format_double(max_d) << ", " << s.sweeps << ", "
      << format_double(s.stationarity_residual) << "\n";
  }
}

void write_snapshots(const Trajectory& traj, const Scenario& sc, const std::string& dir) {
  const Mesh& m = sc.mesh;
  for (const auto& s : traj.steps) {
    const std::string base = dir + "/snap_" + std::to_string(s.step) + "_";
    {
      std::ofstream f = open_out(base + "u.csv");
      f << (m.dim == 1 ? "node, x, u_x\n" : "node, x, y, u_x, u_y\n");
      for (int n = 0; n < m.n_nodes(); ++n) {
        f << n << ", " << format_double(m.nodes[n][0]);
        if (m.dim == 2) f << ", " << format_double(m.nodes[n][1]);
        for (int c = 0; c < m.dim; ++c)
          f << ", " << format_double(s.fields.u[static_cast<size_t>(n) * m.dim + c]);
        f << "\n";
      }
    }
    {
      std::ofstream f = open_out(base + "chi.csv");
      f << (m.dim == 1 ? "node, x, chi\n" : "node, x, y, chi\n");
      for (int n = 0; n < m.n_nodes(); ++n) {
        f << n << ", " << format_double(m.nodes[n][0]);
        if (m.dim == 2) f << ", " << format_double(m.nodes[n][1]);
        f << ", " << format_double(s.fields.chi[n]) << "\n";
      }
    }
    {
      std::ofstream f = open_out(base + "d.csv");
      f << (m.dim == 1 ? "node, x, d_xx\n" : "node, x, y, d_xx, d_yy, d_xy\n");
      for (int n = 0; n < m.n_nodes(); ++n) {
        f << n << ", " << format_double(m.nodes[n][0]);
        if (m.dim == 2) f << ", " << format_double(m.nodes[n][1]);
        f << ", " << format_double(s.fields.d[n](0, 0));
        if (m.dim == 2)
          f << ", " << format_double(s.fields.d[n](1, 1)) << ", "
            << format_double(s.fields.d[n](0, 1));
        f << "\n";
      }
    }
  }
}

void write_outputs(const Trajectory& traj, const Scenario& sc, const std::string& dir) {
  std::filesystem::create_directories(dir);
  write_timeseries(traj, dir + "/timeseries.csv");
  write_snapshots(traj, sc, dir);
}

Trajectory read_trajectory(const std::string& dir, const Scenario& sc) {
  const Mesh& m = sc.mesh;
  const auto rows = read_csv(dir + "/timeseries.csv");
  if (rows.size() < 2) throw ConfigError("timeseries.csv in '" + dir + "' has no data rows");
  Trajectory traj;
  double diss_cum = 0.0, integral = 0.0, p_prev = 0.0, e0 = 0.0;
  for (size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != 15)
      throw ConfigError("timeseries.csv row " + std::to_string(r) + " has " +
                        std::to_string(row.size()) + " columns, expected 15");
    TrajectoryStep s;
    s.step = static_cast<int>(parse_csv_double(row[0], dir));
    s.t = parse_csv_double(row[1], dir);
    s.sweeps = static_cast<int>(parse_csv_double(row[13], dir));
    s.stationarity_residual = parse_csv_double(row[14], dir);

    const std::string base = dir + "/snap_" + std::to_string(s.step) + "_";
    s.fields = StateFields::zeros(m);
    const auto urows = read_csv(base + "u.csv");
    const auto crows = read_csv(base + "chi.csv");
    const auto drows = read_csv(base + "d.csv");
    if (static_cast<int>(urows.size()) != m.n_nodes() + 1 ||
        static_cast<int>(crows.size()) != m.n_nodes() + 1 ||
        static_cast<int>(drows.size()) != m.n_nodes() + 1)
      throw ConfigError("snapshot files for step " + std::to_string(s.step) +
                        " do not match the scenario mesh");
    const int coord_cols = m.dim == 1 ? 2 : 3;
    for (int n = 0; n < m.n_nodes(); ++n) {
      for (int c = 0; c < m.dim; ++c)
        s.fields.u[static_cast<size_t>(n) * m.dim + c] =
            parse_csv_double(urows[n + 1][coord_cols + c], dir);
      s.fields.chi[n] = parse_csv_double(crows[n + 1][coord_cols], dir);
      s.fields.d[n].set(0, 0, parse_csv_double(drows[n + 1][coord_cols], dir));
      if (m.dim == 2) {
        s.fields.d[n].set(1, 1, parse_csv_double(drows[n + 1][coord_cols + 1], dir));
        s.fields.d[n].set(0, 1, parse_csv_double(drows[n + 1][coord_cols + 2], dir));
      }
    }

    s.energy = assemble_energy(s.t, s.fields, sc);
    const double p_now = assemble_power(s.t, s.fields, sc);
    if (traj.steps.empty()) {
      e0 = s.energy.total;
    } else {
      s.diss_increment = lumped_dissipation(sc, s.fields, traj.steps.back().fields);
      diss_cum += s.diss_increment;
      integral += 0.5 * (s.t - traj.steps.back().t) * (p_prev + p_now);
    }
    p_prev = p_now;
    s.diss_cum = diss_cum;
    s.power_integral = integral;
    s.balance_gap = s.energy.total + diss_cum - e0 - integral;
    traj.steps.push_back(s);
  }
  traj.complete = true;
  return traj;
}

std::string render_verification_report(const VerificationReport& rep) {
  std::ostringstream o;
  o << "verification " << (rep.ok() ? "PASSED" : "FAILED") << "\n\n";
  o << "structure (feasibility, damage monotonicity): " << (rep.structure_ok ? "ok" : "VIOLATED")
    << "\n";
  if (!rep.structure_ok) o << "  " << rep.structure_issue << "\n";
  o << "stability: min margin " << format_double(rep.stability_min_margin) << " over "
    << rep.stability.size() << " steps, " << (rep.stability_ok ? "ok" : "VIOLATED") << "\n";
  o << "energy balance: max |gap| " << format_double(rep.balance.max_abs_gap) << ", max upper gap "
    << format_double(rep.balance.max_upper_gap) << ", "
    << (rep.balance.upper_ok ? "ok" : "VIOLATED") << "\n";
  o << "condition suite (" << rep.conditions.samples
    << " samples): " << (rep.conditions.ok ? "ok" : "VIOLATED") << "\n";
  o << "  coercivity min slack     " << format_double(rep.conditions.coercivity_min_slack) << "\n";
  o << "  power bound max ratio    " << format_double(rep.conditions.power_max_ratio) << "\n";
  o << "  energy control max ratio " << format_double(rep.conditions.control_max_ratio) << "\n";
  o << "  lipschitz max ratio      " << format_double(rep.conditions.lipschitz_max_ratio) << "\n";
  o << "  constants: c0 = " << format_double(rep.conditions.constants.c0)
    << ", c1 = " << format_double(rep.conditions.constants.c1)
    << ", c_E = " << format_double(rep.conditions.constants.c_e) << "\n";
  if (!rep.violations.empty()) {
    o << "\nviolations:\n";
    for (const auto& v : rep.violations) o << "  - " << v << "\n";
  }
  return o.str();
}

void write_verification_report(const VerificationReport& rep, const std::string& txt_path,
                               const std::string& csv_path) {
  {
    std::ofstream f = open_out(txt_path);
    f << render_verification_report(rep);
  }
  std::ofstream f = open_out(csv_path);
  f << "step, t, min_margin, worst_family, competitors, balance_gap\n";
  for (size_t k = 0; k < rep.stability.size(); ++k) {
    const auto& s = rep.stability[k];
    const double gap = k < rep.balance.gaps.size() ? rep.balance.gaps[k] : 0.0;
    f << s.step << ", " << format_double(s.t) << ", " << format_double(s.min_margin) << ", "
      << (s.worst_family.empty() ? "none" : s.worst_family) << ", " << s.checked << ", "
      << format_double(gap) << "\n";
  }
}

}  // namespace dampl
