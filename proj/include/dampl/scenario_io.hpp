#ifndef DAMPL_SCENARIO_IO_HPP
#define DAMPL_SCENARIO_IO_HPP

#include <string>

#include "dampl/energetics.hpp"
#include "dampl/solver.hpp"

namespace dampl {

// Parses a line-oriented config file ([section] headers, key = value pairs,
// '#' comments). Unknown sections or keys are errors; every violation is
// collected into a single ValidationError. The returned scenario is finalized.
Scenario parse_scenario(const std::string& path);

// Same, from a string buffer.
Scenario parse_scenario_text(const std::string& text, const std::string& origin = "<string>");

// Canonical form: parse(serialize(sc)) reproduces sc exactly.
std::string serialize_scenario(const Scenario& sc);

// Formats a double with 17 significant digits (round-trips exactly).
std::string format_double(double v);

// Fixed-schema time series, one row per stored step.
void write_timeseries(const Trajectory& traj, const std::string& path);

// One CSV per field per step: snap_<step>_{u,chi,d}.csv with node id,
// coordinates and values.
void write_snapshots(const Trajectory& traj, const Scenario& sc, const std::string& dir);

// Writes timeseries.csv plus snapshots into dir (created if missing).
void write_outputs(const Trajectory& traj, const Scenario& sc, const std::string& dir);

// Rebuilds a trajectory from write_outputs artifacts; energies and balance
// terms are recomputed from the stored fields.
Trajectory read_trajectory(const std::string& dir, const Scenario& sc);

// Human-readable verification report plus a per-step CSV next to it.
void write_verification_report(const VerificationReport& rep, const std::string& txt_path,
                               const std::string& csv_path);

std::string render_verification_report(const VerificationReport& rep);

}  // namespace dampl

#endif
