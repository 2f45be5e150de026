#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dampl/dampl.h"

namespace {

char g_err[8192];
char g_summary[65536];

int to_exit_code(dampl_status s) {
  switch (s) {
    case DAMPL_OK: return 0;
    case DAMPL_ERR_VALIDATION: return 1;
    case DAMPL_ERR_SOLVER: return 2;
    case DAMPL_ERR_VERIFICATION: return 3;
    case DAMPL_ERR_IO: return 1;
    case DAMPL_ERR_INTERNAL: return 1;
  }
  return 1;
}

int fail(dampl_status s) {
  std::fprintf(stderr, "error: %s\n", g_err[0] ? g_err : "unknown failure");
  return to_exit_code(s);
}

struct ScenarioHandle {
  dampl_scenario* sc = nullptr;
  ~ScenarioHandle() { dampl_scenario_free(sc); }
};

struct TrajectoryHandle {
  dampl_trajectory* traj = nullptr;
  ~TrajectoryHandle() { dampl_trajectory_free(traj); }
};

int cmd_run(const std::string& path, const std::string& out_dir) {
  ScenarioHandle sc;
  dampl_status s = dampl_scenario_load(path.c_str(), &sc.sc, g_err, sizeof(g_err));
  if (s != DAMPL_OK) return fail(s);
  TrajectoryHandle traj;
  s = dampl_run(sc.sc, &traj.traj, g_err, sizeof(g_err));
  if (s != DAMPL_OK && s != DAMPL_ERR_SOLVER) return fail(s);
  if (traj.traj) {
    const dampl_status ws =
        dampl_write_outputs(traj.traj, sc.sc, out_dir.c_str(), g_err, sizeof(g_err));
    if (ws != DAMPL_OK) return fail(ws);
    std::printf("wrote %d steps to %s\n", dampl_trajectory_steps(traj.traj), out_dir.c_str());
  }
  if (s == DAMPL_ERR_SOLVER) {
    std::fprintf(stderr, "solver stall: %s\n", g_err);
    return to_exit_code(s);
  }
  return 0;
}

int cmd_verify(const std::string& path, const std::string& traj_dir) {
  ScenarioHandle sc;
  dampl_status s = dampl_scenario_load(path.c_str(), &sc.sc, g_err, sizeof(g_err));
  if (s != DAMPL_OK) return fail(s);
  TrajectoryHandle traj;
  const char* report_dir = nullptr;
  if (!traj_dir.empty()) {
    s = dampl_read_trajectory(sc.sc, traj_dir.c_str(), &traj.traj, g_err, sizeof(g_err));
    report_dir = traj_dir.c_str();
  } else {
    s = dampl_run(sc.sc, &traj.traj, g_err, sizeof(g_err));
  }
  if (s != DAMPL_OK) return fail(s);
  s = dampl_verify(sc.sc, traj.traj, report_dir, g_summary, sizeof(g_summary), g_err,
                   sizeof(g_err));
  std::printf("%s", g_summary);
  if (s == DAMPL_ERR_VERIFICATION) return to_exit_code(s);
  if (s != DAMPL_OK) return fail(s);
  return 0;
}

int cmd_oracle(const std::string& path, int step, int levels) {
  ScenarioHandle sc;
  dampl_status s = dampl_scenario_load(path.c_str(), &sc.sc, g_err, sizeof(g_err));
  if (s != DAMPL_OK) return fail(s);
  double am = 0.0, oracle = 0.0, qgap = 0.0;
  s = dampl_oracle_compare(sc.sc, step, levels, &am, &oracle, &qgap, g_err, sizeof(g_err));
  if (s != DAMPL_OK) return fail(s);
  std::printf("step %d: am objective %.17g, oracle objective %.17g, quantization gap %.17g\n",
              step, am, oracle, qgap);
  const double tol = std::max(1e-6 * (1.0 + std::abs(am)), qgap);
  if (std::abs(am - oracle) <= tol) {
    std::printf("agreement within tolerance %.17g\n", tol);
    return 0;
  }
  std::fprintf(stderr, "objective mismatch %.17g exceeds tolerance %.17g\n",
               std::abs(am - oracle), tol);
  return 3;
}

int cmd_check_conditions(const std::string& path, int samples, unsigned seed) {
  ScenarioHandle sc;
  dampl_status s = dampl_scenario_load(path.c_str(), &sc.sc, g_err, sizeof(g_err));
  if (s != DAMPL_OK) return fail(s);
  s = dampl_check_conditions(sc.sc, samples, seed, g_summary, sizeof(g_summary), g_err,
                             sizeof(g_err));
  std::printf("%s", g_summary);
  if (s == DAMPL_ERR_VERIFICATION) return to_exit_code(s);
  if (s != DAMPL_OK) return fail(s);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("damage-plasticity evolution driver (") + dampl_version() + ")"};
  app.require_subcommand(1);

  std::string scenario_path, out_dir = "out", traj_dir;
  int step = 1, levels = 11, samples = 1000;
  unsigned seed = 12345;

  auto* run = app.add_subcommand("run", "evolve a scenario and write outputs");
  run->add_option("scenario", scenario_path, "scenario config file")->required();
  run->add_option("--out", out_dir, "output directory");

  auto* verify = app.add_subcommand("verify", "certify a fresh or stored trajectory");
  verify->add_option("scenario", scenario_path, "scenario config file")->required();
  verify->add_option("--trajectory", traj_dir, "directory with stored outputs");

  auto* oracle = app.add_subcommand("oracle", "compare a step against exhaustive search");
  oracle->add_option("scenario", scenario_path, "scenario config file")->required();
  oracle->add_option("--step", step, "time step to compare (1-based)")->required();
  oracle->add_option("--levels", levels, "quantization levels per unknown");

  auto* cond = app.add_subcommand("check-conditions", "sample the structural inequalities");
  cond->add_option("scenario", scenario_path, "scenario config file")->required();
  cond->add_option("--samples", samples, "number of random states")->required();
  cond->add_option("--seed", seed, "sampling seed");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return cmd_run(scenario_path, out_dir);
  if (verify->parsed()) return cmd_verify(scenario_path, traj_dir);
  if (oracle->parsed()) return cmd_oracle(scenario_path, step, levels);
  if (cond->parsed()) return cmd_check_conditions(scenario_path, samples, seed);
  return 1;
}
