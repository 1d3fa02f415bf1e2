#include "gpe2/run_config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "gpe2/version.hpp"

namespace gpe2::cli {
namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw parameter_error("config key '" + key + "' has a malformed numeric value '" + value + "'");
    }
}

long long parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw parameter_error("config key '" + key + "' has a malformed integer value '" + value + "'");
    }
}

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

RunConfig parse_config_text(const std::string& text) {
    RunConfig rc;
    rc.raw_text = text;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw parameter_error("config line " + std::to_string(lineno) + " is not 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (value.empty()) throw parameter_error("config key '" + key + "' has an empty value");

        if (key == "L") rc.L = parse_double(key, value);
        else if (key == "N") rc.N = static_cast<int>(parse_int(key, value));
        else if (key == "omega") rc.omega = parse_double(key, value);
        else if (key == "g1") rc.g1 = parse_double(key, value);
        else if (key == "g2") rc.g2 = parse_double(key, value);
        else if (key == "g12") rc.g12 = parse_double(key, value);
        else if (key == "seed") rc.seed = value;
        else if (key == "rng_seed") rc.rng_seed = static_cast<std::uint64_t>(parse_int(key, value));
        else if (key == "seed_u") rc.seed_u = value;
        else if (key == "seed_v") rc.seed_v = value;
        else if (key == "time_step") rc.time_step = parse_double(key, value);
        else if (key == "tol_residual") rc.tol_residual = parse_double(key, value);
        else if (key == "tol_energy") rc.tol_energy = parse_double(key, value);
        else if (key == "max_iters") rc.max_iters = static_cast<int>(parse_int(key, value));
        else if (key == "eps_fraction") rc.eps_fraction = parse_double(key, value);
        else if (key == "advisory_cap_c0") rc.advisory_cap_c0 = parse_double(key, value);
        else if (key == "out_dir") rc.out_dir = value;
        else if (key == "label") rc.label = value;
        else if (key == "schedule") {
            std::istringstream vs(value);
            CouplingParams g;
            if (!(vs >> g.g1 >> g.g2 >> g.g12)) {
                throw parameter_error("config key 'schedule' needs a 'g1 g2 g12' triple, got '" + value + "'");
            }
            std::string rest;
            if (vs >> rest) {
                throw parameter_error("config key 'schedule' has trailing tokens: '" + value + "'");
            }
            rc.schedule.push_back(g);
        } else {
            throw parameter_error("unknown config key '" + key + "'");
        }
    }
    for (auto& g : rc.schedule) g.omega = rc.omega;
    return rc;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot read config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

Grid2D make_grid(const RunConfig& rc) {
    Grid2D grid(rc.L, rc.N, rc.omega);
    if (!grid.meets_truncation_rule()) {
        throw parameter_error("config key 'L' violates the truncation rule L >= 6/sqrt(omega)");
    }
    return grid;
}

SolverConfig make_solver_config(const RunConfig& rc) {
    SolverConfig sc;
    sc.time_step = rc.time_step;
    sc.residual_tol = rc.tol_residual;
    sc.energy_tol = rc.tol_energy;
    sc.max_iters = rc.max_iters;
    sc.rng_seed = rc.rng_seed;
    sc.seed_u_path = rc.seed_u;
    sc.seed_v_path = rc.seed_v;

    if (rc.seed == "symmetric") sc.seed_kind = SeedKind::symmetric_gaussian;
    else if (rc.seed == "dipole" || rc.seed == "headline") sc.seed_kind = SeedKind::dipole_perturbed;
    else if (rc.seed == "random") sc.seed_kind = SeedKind::random;
    else if (rc.seed == "file") sc.seed_kind = SeedKind::from_file;
    else throw parameter_error("config key 'seed' must be symmetric|dipole|random|headline|file, got '" + rc.seed + "'");

    if (!rc.schedule.empty()) {
        sc.continuation_schedule = rc.schedule;
    } else {
        sc.continuation_schedule = {CouplingParams{rc.g1, rc.g2, rc.g12, rc.omega}};
    }
    sc.validate();
    return sc;
}

ManifestEntry make_entry(int index, const GroundStateSolution& sol, double eps_fraction) {
    ManifestEntry e;
    e.index = index;
    e.g = sol.g;
    e.energy = sol.energy;
    e.lm = sol.multipliers;
    e.residual_u = sol.residual_u;
    e.residual_v = sol.residual_v;
    e.converged = sol.converged;
    e.iterations = sol.iterations;

    const double eps = eps_fraction * sol.u.max_value();
    if (eps > 0.0) {
        const SegregationReport seg = segregation_report(sol.u, sol.v, eps);
        e.overlap = seg.overlap;
        e.eps = seg.eps;
        e.max_v_on_U_eps = seg.max_v_on_U_eps;
        e.max_u_on_V_eps = seg.max_u_on_V_eps;
    }

    try {
        const SymmetryReport sym = fit_half_plane(sol.u, sol.v);
        e.nu_defined = true;
        e.nu = sym.nu_fit;
        e.defect_u = sym.defect_u;
        e.defect_v = sym.defect_v;
        e.l2_error_u = sym.l2_error_u;
        e.l2_error_v = sym.l2_error_v;
    } catch (const direction_undefined_error&) {
        e.nu_defined = false;
        const auto mu = angular_modes(sol.u, 8);
        const auto mv = angular_modes(sol.v, 8);
        e.defect_u = 1.0 - mu[0];
        e.defect_v = 1.0 - mv[0];
        e.l2_error_u = std::nan("");
        e.l2_error_v = std::nan("");
    }
    return e;
}

void write_manifest(const std::string& path, const RunConfig& rc,
                    const std::vector<ManifestEntry>& entries) {
    nlohmann::ordered_json doc;
    doc["label"] = rc.label;
    doc["tool_version"] = gpe2::kVersion;
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(rc.raw_text)));
    doc["config_hash"] = hash;
    doc["advisory_cap_c0"] = rc.advisory_cap_c0;
    doc["advisory_cap_exceeded"] = false;

    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const auto& e : entries) {
        if (std::max(e.g.g1, e.g.g2) > rc.advisory_cap_c0) doc["advisory_cap_exceeded"] = true;
        nlohmann::ordered_json j;
        j["index"] = e.index;
        j["g1"] = e.g.g1;
        j["g2"] = e.g.g2;
        j["g12"] = e.g.g12;
        j["omega"] = e.g.omega;
        j["u_file"] = e.u_file;
        j["v_file"] = e.v_file;
        j["energy"] = {
            {"kinetic_u", e.energy.kinetic_u}, {"trap_u", e.energy.trap_u},
            {"quartic_u", e.energy.quartic_u}, {"kinetic_v", e.energy.kinetic_v},
            {"trap_v", e.energy.trap_v},       {"quartic_v", e.energy.quartic_v},
            {"interaction", e.energy.interaction}, {"total", e.energy.total},
        };
        j["lambda"] = e.lm.lambda;
        j["mu"] = e.lm.mu;
        j["residual_u"] = e.residual_u;
        j["residual_v"] = e.residual_v;
        j["overlap"] = e.overlap;
        j["eps"] = e.eps;
        j["max_v_on_U_eps"] = e.max_v_on_U_eps;
        j["max_u_on_V_eps"] = e.max_u_on_V_eps;
        j["defect_u"] = e.defect_u;
        j["defect_v"] = e.defect_v;
        if (e.nu_defined) {
            j["nu"] = {e.nu[0], e.nu[1]};
            j["l2_error_u"] = e.l2_error_u;
            j["l2_error_v"] = e.l2_error_v;
        } else {
            j["nu"] = nullptr;
            j["l2_error_u"] = nullptr;
            j["l2_error_v"] = nullptr;
        }
        j["converged"] = e.converged;
        j["iterations"] = e.iterations;
        j["wall_time_s"] = e.wall_time_s;
        list.push_back(j);
    }
    doc["entries"] = list;

    std::ofstream out(path, std::ios::trunc);
    if (!out) throw io_error("cannot write manifest: " + path);
    out << doc.dump(2) << "\n";
}

void write_diagnostics_csv(const std::string& path, const std::string& label,
                           const std::vector<ManifestEntry>& entries) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw io_error("cannot write diagnostics CSV: " + path);
    out << "run,entry,g1,g2,g12,energy,lambda,mu,residual_u,residual_v,overlap,"
           "eps,max_v_on_U_eps,max_u_on_V_eps,defect_u,defect_v,l2_error_u,l2_error_v,"
           "nu_x,nu_y,converged,iterations\n";
    for (const auto& e : entries) {
        out << label << ',' << e.index << ',' << fmt_double(e.g.g1) << ',' << fmt_double(e.g.g2)
            << ',' << fmt_double(e.g.g12) << ',' << fmt_double(e.energy.total) << ','
            << fmt_double(e.lm.lambda) << ',' << fmt_double(e.lm.mu) << ','
            << fmt_double(e.residual_u) << ',' << fmt_double(e.residual_v) << ','
            << fmt_double(e.overlap) << ',' << fmt_double(e.eps) << ','
            << fmt_double(e.max_v_on_U_eps) << ',' << fmt_double(e.max_u_on_V_eps) << ','
            << fmt_double(e.defect_u) << ',' << fmt_double(e.defect_v) << ','
            << (e.nu_defined ? fmt_double(e.l2_error_u) : "nan") << ','
            << (e.nu_defined ? fmt_double(e.l2_error_v) : "nan") << ','
            << (e.nu_defined ? fmt_double(e.nu[0]) : "nan") << ','
            << (e.nu_defined ? fmt_double(e.nu[1]) : "nan") << ','
            << (e.converged ? 1 : 0) << ',' << e.iterations << '\n';
    }
}

void write_report_kv(std::ostream& os, const SegregationReport& seg) {
    os << "overlap = " << fmt_double(seg.overlap) << "\n"
       << "sup_min = " << fmt_double(seg.sup_min) << "\n"
       << "eps = " << fmt_double(seg.eps) << "\n"
       << "max_v_on_U_eps = " << fmt_double(seg.max_v_on_U_eps) << "\n"
       << "max_u_on_V_eps = " << fmt_double(seg.max_u_on_V_eps) << "\n"
       << "u_region_empty = " << (seg.u_region_empty ? 1 : 0) << "\n"
       << "v_region_empty = " << (seg.v_region_empty ? 1 : 0) << "\n";
}

void write_report_kv(std::ostream& os, const SymmetryReport& sym, bool nu_defined) {
    os << "defect_u = " << fmt_double(sym.defect_u) << "\n"
       << "defect_v = " << fmt_double(sym.defect_v) << "\n";
    if (nu_defined) {
        os << "nu_x = " << fmt_double(sym.nu_fit[0]) << "\n"
           << "nu_y = " << fmt_double(sym.nu_fit[1]) << "\n"
           << "l2_error_u = " << fmt_double(sym.l2_error_u) << "\n"
           << "l2_error_v = " << fmt_double(sym.l2_error_v) << "\n"
           << "nodal_points = " << sym.nodal_curve.size() << "\n";
    } else {
        os << "nu_x = nan\nnu_y = nan\nl2_error_u = nan\nl2_error_v = nan\nnodal_points = 0\n";
    }
}

} // namespace gpe2::cli
