#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gpe2/diagnostics.hpp"
#include "gpe2/solver.hpp"

// Plain-text configuration, manifests and CSV output: the user-facing
// surface behind the gpe2 tool.

namespace gpe2::cli {

// Key-value config file (one `key = value` per line, '#' comments).
// `schedule` may repeat, each line holding a "g1 g2 g12" triple.
struct RunConfig {
    double L = 8.0;
    int N = 257;
    double omega = 1.0;

    double g1 = 0.0, g2 = 0.0, g12 = 0.0;
    std::vector<CouplingParams> schedule; // sweep entries; falls back to (g1,g2,g12)

    std::string seed = "dipole"; // symmetric | dipole | random | headline | file
    std::uint64_t rng_seed = 1;
    std::string seed_u, seed_v; // field files for seed = file

    double time_step = 0.1;
    double tol_residual = 1e-6;
    double tol_energy = 1e-10;
    int max_iters = 20000;

    double eps_fraction = 0.4;    // segregation threshold, relative to max u
    double advisory_cap_c0 = 5.0; // advisory cap on max(g1, g2), recorded in manifests

    std::string out_dir = "gpe2-out";
    std::string label = "run";

    std::string raw_text; // exact file contents, hashed into the manifest
};

RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text);

// Throws parameter_error when the grid or couplings are unusable for a
// solve (includes the truncation rule L >= 6/sqrt(omega)).
Grid2D make_grid(const RunConfig& rc);
SolverConfig make_solver_config(const RunConfig& rc);

std::uint64_t fnv1a64(const std::string& text);

struct ManifestEntry {
    int index = 0;
    CouplingParams g;
    std::string u_file, v_file;
    EnergyBreakdown energy;
    MultiplierPair lm;
    double residual_u = 0, residual_v = 0;
    double overlap = 0;
    double eps = 0;
    double max_v_on_U_eps = 0, max_u_on_V_eps = 0;
    double defect_u = 0, defect_v = 0;
    bool nu_defined = false;
    std::array<double, 2> nu = {0, 0};
    double l2_error_u = 0, l2_error_v = 0;
    bool converged = false;
    int iterations = 0;
    double wall_time_s = 0;
};

// Builds the diagnostics part of an entry from a solution.
ManifestEntry make_entry(int index, const GroundStateSolution& sol, double eps_fraction);

void write_manifest(const std::string& path, const RunConfig& rc,
                    const std::vector<ManifestEntry>& entries);
void write_diagnostics_csv(const std::string& path, const std::string& label,
                           const std::vector<ManifestEntry>& entries);

// Flat key-value serialization of the diagnostic reports.
void write_report_kv(std::ostream& os, const SegregationReport& seg);
void write_report_kv(std::ostream& os, const SymmetryReport& sym, bool nu_defined);

// Subcommand bodies; exit codes: 0 success/converged, 1 config or usage
// error, 2 solver did not converge.
int cmd_solve(const std::string& config_path);
int cmd_sweep(const std::string& config_path, int parallel);
int cmd_diagnose(const std::string& u_path, const std::string& v_path,
                 double eps_fraction, double nodal_threshold, const std::string& out_path);
int cmd_oracle_eigen(const std::string& kind, double nu_x, double nu_y, const std::string& part,
                     double L, int N, double omega, const std::string& out_path);
int cmd_oracle_lambda(double from, double to, double step, const std::string& out_path);
int cmd_oracle_frame(const std::string& in_path, const std::string& out_path);

} // namespace gpe2::cli
