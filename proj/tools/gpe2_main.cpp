#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gpe2/kernels.hpp"
#include "gpe2/run_config.hpp"
#include "gpe2/version.hpp"

// gpe2: two-component Gross-Pitaevskii ground states on a square trap grid.
//
//   gpe2 solve  <config>            one coupling triple
//   gpe2 sweep  <config> [-p k]     continuation over a g12 schedule
//   gpe2 oracle eigen|lambda-h|frame ...
//   gpe2 diagnose --u u.gpe2 --v v.gpe2
//
// Exit codes: 0 converged / success, 1 config or usage error, 2 solver
// finished without convergence.

int main(int argc, char** argv) {
    CLI::App app{"two-component Gross-Pitaevskii ground-state solver"};
    app.set_version_flag("--version", std::string("gpe2 ") + gpe2::kVersion +
                                          " (kernels: " + gpe2::kernels::active().name + ")");
    app.require_subcommand(1);

    std::string config_path;
    auto* solve = app.add_subcommand("solve", "minimize one coupling triple");
    solve->add_option("config", config_path, "key-value config file")->required();

    int parallel = 1;
    auto* sweep = app.add_subcommand("sweep", "continuation over a schedule of triples");
    sweep->add_option("config", config_path, "key-value config file")->required();
    sweep->add_option("-p,--parallel", parallel,
                      "cold-start branches to run concurrently (disables warm starts)");

    auto* oracle = app.add_subcommand("oracle", "closed-form reference artifacts");
    oracle->require_subcommand(1);

    std::string eig_kind = "ground", eig_part = "signed", eig_out = "eigen.gpe2";
    std::vector<double> eig_nu = {1.0, 0.0};
    double oL = 8.0, oOmega = 1.0;
    int oN = 257;
    auto* eigen = oracle->add_subcommand("eigen", "emit an oscillator eigenfunction field");
    eigen->add_option("--kind", eig_kind, "ground | dipole");
    eigen->add_option("--nu", eig_nu, "dipole axis (two components)")->expected(2);
    eigen->add_option("--part", eig_part, "signed | plus | minus");
    eigen->add_option("--L", oL, "grid half-width");
    eigen->add_option("--N", oN, "points per dimension");
    eigen->add_option("--omega", oOmega, "trap frequency");
    eigen->add_option("--out", eig_out, "output field file");

    double lh_from = 0.0, lh_to = 0.0, lh_step = 1.0;
    std::string lh_out;
    auto* lambda = oracle->add_subcommand("lambda-h", "half-space eigenvalue table");
    lambda->add_option("--from", lh_from, "first a");
    lambda->add_option("--to", lh_to, "last a");
    lambda->add_option("--step", lh_step, "a increment");
    lambda->add_option("--out", lh_out, "CSV path (stdout when omitted)");

    std::string frame_in, frame_out = "frame.gpe2";
    auto* frame = oracle->add_subcommand("frame", "map a field to the Gaussian frame");
    frame->add_option("--in", frame_in, "input field file")->required();
    frame->add_option("--out", frame_out, "output field file");

    std::string du, dv, dout;
    double deps = 0.4, dthresh = 1e-3;
    auto* diagnose = app.add_subcommand("diagnose", "segregation/symmetry reports for a field pair");
    diagnose->add_option("--u", du, "first component field file")->required();
    diagnose->add_option("--v", dv, "second component field file")->required();
    diagnose->add_option("--eps-fraction", deps, "segregation threshold relative to max u");
    diagnose->add_option("--threshold", dthresh, "nodal probe threshold");
    diagnose->add_option("--out", dout, "report path (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    if (*solve) return gpe2::cli::cmd_solve(config_path);
    if (*sweep) return gpe2::cli::cmd_sweep(config_path, parallel);
    if (*diagnose) return gpe2::cli::cmd_diagnose(du, dv, deps, dthresh, dout);
    if (*eigen) {
        return gpe2::cli::cmd_oracle_eigen(eig_kind, eig_nu[0], eig_nu[1], eig_part, oL, oN,
                                           oOmega, eig_out);
    }
    if (*lambda) return gpe2::cli::cmd_oracle_lambda(lh_from, lh_to, lh_step, lh_out);
    if (*frame) return gpe2::cli::cmd_oracle_frame(frame_in, frame_out);
    return 1;
}
