#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>

#include "gpe2/oracles.hpp"
#include "gpe2/run_config.hpp"
#include "gpe2/version.hpp"

namespace gpe2::cli {
namespace {

namespace fs = std::filesystem;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int config_error(const std::exception& e) {
    std::cerr << "gpe2: config error: " << e.what() << "\n";
    return 1;
}

void save_solution_fields(const GroundStateSolution& sol, const fs::path& dir,
                          ManifestEntry& entry, const fs::path& rel_prefix) {
    fs::create_directories(dir);
    save_field(sol.u, (dir / "u.gpe2").string());
    save_field(sol.v, (dir / "v.gpe2").string());
    entry.u_file = (rel_prefix / "u.gpe2").generic_string();
    entry.v_file = (rel_prefix / "v.gpe2").generic_string();
}

} // namespace

int cmd_solve(const std::string& config_path) {
    RunConfig rc;
    Grid2D grid;
    SolverConfig sc;
    try {
        rc = parse_config_file(config_path);
        grid = make_grid(rc);
        sc = make_solver_config(rc);
    } catch (const std::exception& e) {
        return config_error(e);
    }

    const auto t0 = std::chrono::steady_clock::now();
    GroundStateSolution sol;
    try {
        sol = (rc.seed == "headline") ? solve_best_of_seeds(sc, grid)
                                      : solve_ground_state(sc, grid);
    } catch (const std::exception& e) {
        std::cerr << "gpe2: solve failed: " << e.what() << "\n";
        return 2;
    }

    ManifestEntry entry = make_entry(0, sol, rc.eps_fraction);
    entry.wall_time_s = seconds_since(t0);
    const fs::path out(rc.out_dir);
    save_solution_fields(sol, out, entry, "");
    write_manifest((out / "manifest.json").string(), rc, {entry});
    write_diagnostics_csv((out / "diagnostics.csv").string(), rc.label, {entry});

    if (!sol.converged) {
        std::cerr << "gpe2: not converged after " << sol.iterations << " iterations\n";
        return 2;
    }
    std::cout << "converged: energy=" << sol.energy.total << " lambda=" << sol.multipliers.lambda
              << " mu=" << sol.multipliers.mu << "\n";
    return 0;
}

int cmd_sweep(const std::string& config_path, int parallel) {
    RunConfig rc;
    Grid2D grid;
    SolverConfig sc;
    try {
        rc = parse_config_file(config_path);
        if (rc.schedule.empty()) {
            throw parameter_error("sweep needs at least one 'schedule' entry");
        }
        grid = make_grid(rc);
        sc = make_solver_config(rc);
        if (parallel < 1) throw parameter_error("--parallel must be >= 1");
    } catch (const std::exception& e) {
        return config_error(e);
    }

    const fs::path out(rc.out_dir);
    fs::create_directories(out);
    std::vector<GroundStateSolution> sols;
    std::vector<double> walls;
    const auto t0 = std::chrono::steady_clock::now();

    if (parallel == 1) {
        sols = continuation_sweep(sc, grid);
        walls.assign(sols.size(), 0.0);
        walls.back() = seconds_since(t0);
    } else {
        // independent cold-start branches, warm-starting disabled
        std::vector<std::future<GroundStateSolution>> futs(sc.continuation_schedule.size());
        std::size_t next = 0;
        while (next < futs.size()) {
            const std::size_t batch = std::min<std::size_t>(parallel, futs.size() - next);
            for (std::size_t k = 0; k < batch; ++k) {
                SolverConfig one = sc;
                one.continuation_schedule = {sc.continuation_schedule[next + k]};
                futs[next + k] = std::async(std::launch::async, [one, grid] {
                    return solve_ground_state(one, grid);
                });
            }
            next += batch;
        }
        for (auto& f : futs) sols.push_back(f.get());
        walls.assign(sols.size(), 0.0);
        walls.back() = seconds_since(t0);
    }

    std::vector<ManifestEntry> entries;
    bool all_converged = true;
    for (std::size_t k = 0; k < sols.size(); ++k) {
        ManifestEntry e = make_entry(static_cast<int>(k), sols[k], rc.eps_fraction);
        e.wall_time_s = walls[k];
        char sub[32];
        std::snprintf(sub, sizeof(sub), "entry_%03zu", k);
        save_solution_fields(sols[k], out / sub, e, sub);
        all_converged = all_converged && sols[k].converged;
        entries.push_back(std::move(e));
    }
    write_manifest((out / "manifest.json").string(), rc, entries);
    write_diagnostics_csv((out / "diagnostics.csv").string(), rc.label, entries);

    if (!all_converged) {
        std::cerr << "gpe2: at least one sweep entry did not converge\n";
        return 2;
    }
    std::cout << "sweep complete: " << entries.size() << " entries\n";
    return 0;
}

int cmd_diagnose(const std::string& u_path, const std::string& v_path,
                 double eps_fraction, double nodal_threshold, const std::string& out_path) {
    try {
        const ScalarField u = load_field(u_path);
        const ScalarField v = load_field(v_path);

        std::ostream* os = &std::cout;
        std::ofstream file;
        if (!out_path.empty()) {
            file.open(out_path, std::ios::trunc);
            if (!file) throw io_error("cannot write report: " + out_path);
            os = &file;
        }

        const double eps = eps_fraction * u.max_value();
        if (eps > 0.0) {
            write_report_kv(*os, segregation_report(u, v, eps));
        }
        bool nu_defined = true;
        SymmetryReport sym;
        try {
            sym = fit_half_plane(u, v);
        } catch (const direction_undefined_error&) {
            nu_defined = false;
            sym.defect_u = 1.0 - angular_modes(u, 8)[0];
            sym.defect_v = 1.0 - angular_modes(v, 8)[0];
        }
        write_report_kv(*os, sym, nu_defined);
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", nodal_interior_probe(u, v, nodal_threshold));
        *os << "nodal_interior_area = " << buf << "\n";
        std::snprintf(buf, sizeof(buf), "%.17g", truncation_check(u));
        *os << "truncation_max_u = " << buf << "\n";
        std::snprintf(buf, sizeof(buf), "%.17g", truncation_check(v));
        *os << "truncation_max_v = " << buf << "\n";
        return 0;
    } catch (const std::exception& e) {
        return config_error(e);
    }
}

int cmd_oracle_eigen(const std::string& kind, double nu_x, double nu_y, const std::string& part,
                     double L, int N, double omega, const std::string& out_path) {
    try {
        OscillatorEigenfunction e;
        e.omega = omega;
        e.nu = {nu_x, nu_y};
        if (kind == "ground") e.kind = OscillatorEigenfunction::Kind::ground;
        else if (kind == "dipole") e.kind = OscillatorEigenfunction::Kind::second_dipole;
        else throw parameter_error("oracle eigen: --kind must be ground or dipole");

        DipolePart p = DipolePart::full_signed;
        if (part == "plus") p = DipolePart::positive;
        else if (part == "minus") p = DipolePart::negative;
        else if (part != "signed") throw parameter_error("oracle eigen: --part must be signed|plus|minus");

        const Grid2D grid(L, N, omega);
        save_field(eval_eigenfunction(e, grid, p), out_path);
        return 0;
    } catch (const std::exception& e) {
        return config_error(e);
    }
}

int cmd_oracle_lambda(double from, double to, double step, const std::string& out_path) {
    try {
        const auto rows = lambda_halfspace_table(from, to, step);
        std::ostream* os = &std::cout;
        std::ofstream file;
        if (!out_path.empty()) {
            file.open(out_path, std::ios::trunc);
            if (!file) throw io_error("cannot write table: " + out_path);
            os = &file;
        }
        *os << "a,lambda\n";
        char buf[80];
        for (const auto& [a, lam] : rows) {
            std::snprintf(buf, sizeof(buf), "%.12g,%.12g\n", a, lam);
            *os << buf;
        }
        return 0;
    } catch (const std::exception& e) {
        return config_error(e);
    }
}

int cmd_oracle_frame(const std::string& in_path, const std::string& out_path) {
    try {
        const ScalarField u = load_field(in_path);
        const GaussianFrameField f = to_gaussian_frame(u);
        // reuse the field container for serialization; the frame box has
        // half-width L * sqrt(2 omega)
        ScalarField out(Grid2D(f.half_width, f.n, f.omega));
        for (int i = 0; i < f.n; ++i) {
            for (int j = 0; j < f.n; ++j) out.at(i, j) = f.at(i, j);
        }
        save_field(out, out_path);
        return 0;
    } catch (const std::exception& e) {
        return config_error(e);
    }
}

} // namespace gpe2::cli
