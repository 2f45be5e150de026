#include "dampl/dampl.h"

#include <cstring>
#include <sstream>

#include "dampl/oracle.hpp"
#include "dampl/scenario_io.hpp"

using namespace dampl;

struct dampl_scenario {
  Scenario sc;
};

struct dampl_trajectory {
  Trajectory traj;
};

namespace {

void put_msg(char* buf, size_t len, const std::string& msg) {
  if (!buf || len == 0) return;
  const size_t n = std::min(msg.size(), len - 1);
  std::memcpy(buf, msg.data(), n);
  buf[n] = '\0';
}

template <typename Fn>
dampl_status guarded(char* err, size_t err_len, Fn&& fn) {
  try {
    return fn();
  } catch (const ValidationError& e) {
    put_msg(err, err_len, e.what());
    return DAMPL_ERR_VALIDATION;
  } catch (const ConfigError& e) {
    put_msg(err, err_len, e.what());
    return DAMPL_ERR_VALIDATION;
  } catch (const DomainError& e) {
    put_msg(err, err_len, e.what());
    return DAMPL_ERR_VALIDATION;
  } catch (const SolverError& e) {
    put_msg(err, err_len, e.what());
    return DAMPL_ERR_SOLVER;
  } catch (const std::exception& e) {
    put_msg(err, err_len, e.what());
    return DAMPL_ERR_INTERNAL;
  }
}

}  // namespace

extern "C" {

const char* dampl_version(void) { return "0.1.0"; }

dampl_status dampl_scenario_load(const char* path, dampl_scenario** out, char* err,
                                 size_t err_len) {
  if (!path || !out) {
    put_msg(err, err_len, "null argument");
    return DAMPL_ERR_VALIDATION;
  }
  return guarded(err, err_len, [&] {
    auto* h = new dampl_scenario{parse_scenario(path)};
    *out = h;
    return DAMPL_OK;
  });
}

dampl_status dampl_scenario_load_text(const char* text, dampl_scenario** out, char* err,
                                      size_t err_len) {
  if (!text || !out) {
    put_msg(err, err_len, "null argument");
    return DAMPL_ERR_VALIDATION;
  }
  return guarded(err, err_len, [&] {
    auto* h = new dampl_scenario{parse_scenario_text(text)};
    *out = h;
    return DAMPL_OK;
  });
}

void dampl_scenario_free(dampl_scenario* sc) { delete sc; }

dampl_status dampl_run(const dampl_scenario* sc, dampl_trajectory** out, char* err,
                       size_t err_len) {
  if (!sc || !out) {
    put_msg(err, err_len, "null argument");
    return DAMPL_ERR_VALIDATION;
  }
  return guarded(err, err_len, [&] {
    auto* h = new dampl_trajectory{run_evolution(sc->sc)};
    *out = h;
    if (!h->traj.complete) {
      put_msg(err, err_len, h->traj.abort_reason);
      return DAMPL_ERR_SOLVER;
    }
    return DAMPL_OK;
  });
}

void dampl_trajectory_free(dampl_trajectory* traj) { delete traj; }

int dampl_trajectory_steps(const dampl_trajectory* traj) {
  return traj ? static_cast<int>(traj->traj.steps.size()) : 0;
}

dampl_status dampl_write_outputs(const dampl_trajectory* traj, const dampl_scenario* sc,
                                 const char* dir, char* err, size_t err_len) {
  if (!traj || !sc || !dir) {
    put_msg(err, err_len, "null argument");
    return DAMPL_ERR_VALIDATION;
  }
  return guarded(err, err_len, [&] {
    try {
      write_outputs(traj->traj, sc->sc, dir);
    } catch (const ConfigError& e) {
      put_msg(err, err_len, e.what());
      return DAMPL_ERR_IO;
    }
    return DAMPL_OK;
  });
}

dampl_status dampl_read_trajectory(const dampl_scenario* sc, const char* dir,
                                   dampl_trajectory** out, char* err, size_t err_len) {
  if (!sc || !dir || !out) {
    put_msg(err, err_len, "null argument");
    return DAMPL_ERR_VALIDATION;
  }
  return guarded(err, err_len, [&] {
    try {
      auto* h = new dampl_trajectory{read_trajectory(dir, sc->sc)};
      *out = h;
    } catch (const ConfigError& e) {
      put_msg(err, err_len, e.what());
      return DAMPL_ERR_IO;
    }
    return DAMPL_OK;
  });
}

dampl_status dampl_verify(const dampl_scenario* sc, const dampl_trajectory* traj,
                          const char* out_dir, char* summary, size_t summary_len, char* err,
                          size_t err_len) {
  if (!sc || !traj) {
    put_msg(err, err_len, "null argument");
    return DAMPL_ERR_VALIDATION;
  }
  return guarded(err, err_len, [&] {
    const VerificationReport rep = verify_trajectory(traj->traj, sc->sc);
    put_msg(summary, summary_len, render_verification_report(rep));
    if (out_dir)
      write_verification_report(rep, std::string(out_dir) + "/report.txt",
                                std::string(out_dir) + "/report.csv");
    if (!rep.ok()) {
      put_msg(err, err_len, "verification found " + std::to_string(rep.violations.size()) +
                                " violation(s)");
      return DAMPL_ERR_VERIFICATION;
    }
    return DAMPL_OK;
  });
}

dampl_status dampl_oracle_compare(const dampl_scenario* sc, int step, int levels,
                                  double* am_objective, double* oracle_objective,
                                  double* quantization_gap, char* err, size_t err_len) {
  if (!sc || !am_objective || !oracle_objective || !quantization_gap) {
    put_msg(err, err_len, "null argument");
    return DAMPL_ERR_VALIDATION;
  }
  return guarded(err, err_len, [&] {
    const Scenario& s = sc->sc;
    if (step < 1 || step > s.time.n_steps)
      throw DomainError("oracle step index must be in [1, n_steps]");
    StateFields prev = initial_state(s);
    for (int k = 1; k < step; ++k) prev = incremental_step(s.time.t(k), prev, s);
    const double t = s.time.t(step);
    const StateFields am = incremental_step(t, prev, s);
    const double am_obj = smooth_energy(t, am, s) + lumped_dissipation(s, am, prev);
    const OracleResult oracle = oracle_minimize(t, prev, s, levels);
    StateFields snapped = snap_to_grid(am, prev, s, levels);
    snapped.u = elastic_solve(t, snapped.chi, snapped.d, s);
    const double snap_obj = smooth_energy(t, snapped, s) + lumped_dissipation(s, snapped, prev);
    *am_objective = am_obj;
    *oracle_objective = oracle.objective;
    *quantization_gap = std::max(0.0, snap_obj - am_obj);
    return DAMPL_OK;
  });
}

dampl_status dampl_check_conditions(const dampl_scenario* sc, int samples, unsigned seed,
                                    char* summary, size_t summary_len, char* err,
                                    size_t err_len) {
  if (!sc) {
    put_msg(err, err_len, "null argument");
    return DAMPL_ERR_VALIDATION;
  }
  return guarded(err, err_len, [&] {
    const ConditionReport rep = condition_suite(sc->sc, samples, seed);
    std::ostringstream o;
    o << "condition suite " << (rep.ok ? "PASSED" : "FAILED") << " on " << rep.samples
      << " samples\n";
    o << "  coercivity min slack     " << format_double(rep.coercivity_min_slack) << "\n";
    o << "  power bound max ratio    " << format_double(rep.power_max_ratio) << "\n";
    o << "  energy control max ratio " << format_double(rep.control_max_ratio) << "\n";
    o << "  triangle max defect      " << format_double(rep.diss_triangle_max_defect) << "\n";
    o << "  lipschitz max ratio      " << format_double(rep.lipschitz_max_ratio) << "\n";
    o << "  constants: c0 = " << format_double(rep.constants.c0)
      << ", c1 = " << format_double(rep.constants.c1)
      << ", c_E = " << format_double(rep.constants.c_e) << "\n";
    for (const auto& f : rep.failures) o << "  violation: " << f << "\n";
    put_msg(summary, summary_len, o.str());
    return rep.ok ? DAMPL_OK : DAMPL_ERR_VERIFICATION;
  });
}

}  // extern "C"
