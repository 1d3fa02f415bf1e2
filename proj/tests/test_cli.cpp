#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "gpe2/grid.hpp"
#include "gpe2/run_config.hpp"

using namespace gpe2;
namespace fs = std::filesystem;

namespace {

const std::string kBin = GPE2_BIN_PATH;

int run_cli(const std::string& args, const fs::path& dir, std::string* err_text = nullptr) {
    const fs::path err = dir / "stderr.txt";
    const std::string cmd = kBin + " " + args + " > " + (dir / "stdout.txt").string() +
                            " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    if (err_text) {
        std::ifstream in(err);
        std::stringstream ss;
        ss << in.rdbuf();
        *err_text = ss.str();
    }
    return WEXITSTATUS(status);
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::trunc);
    out << text;
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string strip_wall_time(const std::string& text) {
    std::istringstream in(text);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find("wall_time") == std::string::npos) out << line << '\n';
    }
    return out.str();
}

bool same_bytes(const fs::path& a, const fs::path& b) {
    std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
    std::string sa((std::istreambuf_iterator<char>(fa)), std::istreambuf_iterator<char>());
    std::string sb((std::istreambuf_iterator<char>(fb)), std::istreambuf_iterator<char>());
    return !sa.empty() && sa == sb;
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_CASE("config parser: keys, schedules, malformed lines") {
    const cli::RunConfig rc = cli::parse_config_text(
        "# demo\n"
        "L = 8\nN = 129\nomega = 1\n"
        "g1 = 0.5\ng2 = 0.25\ng12 = 100\n"
        "seed = random\nrng_seed = 7\n"
        "tol_residual = 1e-7\ntol_energy = 1e-11\nmax_iters = 500\n"
        "schedule = 0 0 10\nschedule = 0 0 100\n"
        "out_dir = /tmp/x\nlabel = demo\n");
    CHECK(rc.N == 129);
    CHECK(rc.g12 == 100.0);
    CHECK(rc.schedule.size() == 2);
    CHECK(rc.schedule[1].g12 == 100.0);
    CHECK(rc.rng_seed == 7);

    CHECK_THROWS_WITH_AS(cli::parse_config_text("bogus_key = 1\n"),
                         doctest::Contains("bogus_key"), parameter_error);
    CHECK_THROWS_WITH_AS(cli::parse_config_text("N = twelve\n"),
                         doctest::Contains("N"), parameter_error);
    CHECK_THROWS_AS(cli::parse_config_text("N 12\n"), parameter_error);
    CHECK_THROWS_WITH_AS(cli::parse_config_text("schedule = 1 2\n"),
                         doctest::Contains("schedule"), parameter_error);

    // solver-facing validation: negative couplings and undersized boxes
    CHECK_THROWS_WITH_AS(cli::make_solver_config(cli::parse_config_text("g1 = -1\n")),
                         doctest::Contains("nonnegative"), parameter_error);
    CHECK_THROWS_WITH_AS(cli::make_grid(cli::parse_config_text("L = 2\n")),
                         doctest::Contains("truncation"), parameter_error);
}

TEST_CASE("config hash is stable and text-sensitive") {
    CHECK(cli::fnv1a64("abc") == cli::fnv1a64("abc"));
    CHECK(cli::fnv1a64("abc") != cli::fnv1a64("abd"));
}

TEST_CASE("cli: config errors name the offending key and exit 1") {
    TempDir tmp("gpe2_cli_err");
    write_file(tmp.path / "bad.cfg", "g1 = -1\nout_dir = " + (tmp.path / "out").string() + "\n");
    std::string err;
    CHECK(run_cli("solve " + (tmp.path / "bad.cfg").string(), tmp.path, &err) == 1);
    CHECK(err.find("nonnegative") != std::string::npos);
    CHECK_FALSE(fs::exists(tmp.path / "out"));

    write_file(tmp.path / "unk.cfg", "frobnicate = 1\n");
    CHECK(run_cli("solve " + (tmp.path / "unk.cfg").string(), tmp.path, &err) == 1);
    CHECK(err.find("frobnicate") != std::string::npos);

    // sweep without schedule entries
    write_file(tmp.path / "nosched.cfg", "L = 8\nN = 64\n");
    CHECK(run_cli("sweep " + (tmp.path / "nosched.cfg").string(), tmp.path, &err) == 1);
}

TEST_CASE("cli: forced non-convergence exits 2 but writes flagged outputs") {
    TempDir tmp("gpe2_cli_hard");
    const fs::path out = tmp.path / "out";
    write_file(tmp.path / "hard.cfg",
               "L = 8\nN = 64\nomega = 1\ng12 = 500\nseed = dipole\nmax_iters = 1\n"
               "out_dir = " + out.string() + "\nlabel = hard\n");
    CHECK(run_cli("solve " + (tmp.path / "hard.cfg").string(), tmp.path) == 2);
    CHECK(fs::exists(out / "u.gpe2"));
    CHECK(fs::exists(out / "manifest.json"));
    const auto doc = nlohmann::json::parse(read_file(out / "manifest.json"));
    CHECK(doc["entries"][0]["converged"] == false);
}

TEST_CASE("cli: ground solve writes a manifest with the oscillator energy") {
    TempDir tmp("gpe2_cli_ground");
    const fs::path out = tmp.path / "out";
    write_file(tmp.path / "g0.cfg",
               "L = 8\nN = 257\nomega = 1\nseed = symmetric\ntime_step = 0.5\n"
               "out_dir = " + out.string() + "\nlabel = ground\n");
    CHECK(run_cli("solve " + (tmp.path / "g0.cfg").string(), tmp.path) == 0);
    const auto doc = nlohmann::json::parse(read_file(out / "manifest.json"));
    const double energy = doc["entries"][0]["energy"]["total"].get<double>();
    CHECK(std::fabs(energy - 2.0) <= 1e-3);
    CHECK(doc["entries"][0]["converged"] == true);
    CHECK(doc["tool_version"].is_string());
    CHECK(fs::exists(out / "diagnostics.csv"));

    // round-trip of the written fields
    const ScalarField u = load_field((out / "u.gpe2").string());
    CHECK(std::fabs(u.mass() - 1.0) <= 1e-12);
}

TEST_CASE("cli: sweep manifest keeps execution order and warm starts help") {
    TempDir tmp("gpe2_cli_sweep");
    const fs::path out = tmp.path / "out";
    write_file(tmp.path / "sw.cfg",
               "L = 8\nN = 97\nomega = 1\nseed = dipole\ntime_step = 0.4\n"
               "tol_residual = 1e-5\n"
               "schedule = 0 0 10\nschedule = 0 0 100\n"
               "out_dir = " + out.string() + "\nlabel = sweep\n");
    CHECK(run_cli("sweep " + (tmp.path / "sw.cfg").string(), tmp.path) == 0);
    const auto doc = nlohmann::json::parse(read_file(out / "manifest.json"));
    REQUIRE(doc["entries"].size() == 2);
    CHECK(doc["entries"][0]["g12"].get<double>() == 10.0);
    CHECK(doc["entries"][1]["g12"].get<double>() == 100.0);
    CHECK(doc["entries"][1]["overlap"].get<double>() < doc["entries"][0]["overlap"].get<double>());
    CHECK(fs::exists(out / "entry_000/u.gpe2"));
    CHECK(fs::exists(out / "entry_001/v.gpe2"));
    // soft benchmark: warm start should cut the second entry's iterations
    WARN(doc["entries"][1]["iterations"].get<int>() < doc["entries"][0]["iterations"].get<int>());
}

TEST_CASE("cli: determinism of field files and manifests") {
    TempDir tmp("gpe2_cli_det");
    for (const char* run : {"a", "b"}) {
        const fs::path out = tmp.path / run;
        write_file(tmp.path / (std::string("det_") + run + ".cfg"),
                   "L = 8\nN = 97\nomega = 1\ng12 = 50\nseed = random\nrng_seed = 11\n"
                   "time_step = 0.4\ntol_residual = 1e-5\n"
                   "out_dir = " + out.string() + "\nlabel = det\n");
        CHECK(run_cli("solve " + (tmp.path / (std::string("det_") + run + ".cfg")).string(),
                      tmp.path) == 0);
    }
    CHECK(same_bytes(tmp.path / "a/u.gpe2", tmp.path / "b/u.gpe2"));
    CHECK(same_bytes(tmp.path / "a/v.gpe2", tmp.path / "b/v.gpe2"));
    // manifests agree except for wall-clock timings; the configs differ only
    // in out_dir, which is hashed, so compare entry blocks
    auto ma = nlohmann::json::parse(read_file(tmp.path / "a/manifest.json"));
    auto mb = nlohmann::json::parse(read_file(tmp.path / "b/manifest.json"));
    ma["entries"][0].erase("wall_time_s");
    mb["entries"][0].erase("wall_time_s");
    ma["entries"][0].erase("u_file");
    mb["entries"][0].erase("u_file");
    ma["entries"][0].erase("v_file");
    mb["entries"][0].erase("v_file");
    CHECK(ma["entries"] == mb["entries"]);
}

TEST_CASE("cli oracle: lambda table, eigen fields, frame transform") {
    TempDir tmp("gpe2_cli_oracle");

    std::string err;
    CHECK(run_cli("oracle lambda-h --from 0 --to 0 --step 1 --out " +
                      (tmp.path / "lh.csv").string(), tmp.path, &err) == 0);
    const std::string csv = read_file(tmp.path / "lh.csv");
    CHECK(csv.rfind("a,lambda\n", 0) == 0);
    double a = -1, lam = -1;
    REQUIRE(std::sscanf(csv.c_str() + 9, "%lf,%lf", &a, &lam) == 2);
    CHECK(a == 0.0);
    CHECK(std::fabs(lam - 1.0) <= 1e-3);

    CHECK(run_cli("oracle eigen --kind dipole --nu 1 0 --N 257 --L 8 --out " +
                      (tmp.path / "w.gpe2").string(), tmp.path) == 0);
    const ScalarField w = load_field((tmp.path / "w.gpe2").string());
    CHECK(std::fabs(w.mass() - 2.0) <= 1e-6);

    CHECK(run_cli("oracle eigen --kind ground --N 257 --L 8 --out " +
                      (tmp.path / "phi.gpe2").string(), tmp.path) == 0);
    CHECK(run_cli("oracle frame --in " + (tmp.path / "phi.gpe2").string() + " --out " +
                      (tmp.path / "phit.gpe2").string(), tmp.path) == 0);
    const ScalarField phit = load_field((tmp.path / "phit.gpe2").string());
    double dev = 0;
    for (int i = 2; i < phit.n() - 2; ++i) {
        for (int j = 2; j < phit.n() - 2; ++j) {
            dev = std::max(dev, std::fabs(phit.at(i, j) - 1.0));
        }
    }
    CHECK(dev <= 1e-4);

    CHECK(run_cli("oracle bogus", tmp.path) == 1);
}

TEST_CASE("cli diagnose: key-value report for a field pair") {
    TempDir tmp("gpe2_cli_diag");
    CHECK(run_cli("oracle eigen --kind dipole --part plus --N 129 --L 8 --out " +
                      (tmp.path / "u.gpe2").string(), tmp.path) == 0);
    CHECK(run_cli("oracle eigen --kind dipole --part minus --N 129 --L 8 --out " +
                      (tmp.path / "v.gpe2").string(), tmp.path) == 0);
    CHECK(run_cli("diagnose --u " + (tmp.path / "u.gpe2").string() + " --v " +
                      (tmp.path / "v.gpe2").string() + " --out " + (tmp.path / "rep.txt").string(),
                  tmp.path) == 0);
    const std::string rep = read_file(tmp.path / "rep.txt");
    CHECK(rep.find("overlap = 0") != std::string::npos);
    CHECK(rep.find("nu_x = ") != std::string::npos);
    CHECK(rep.find("nodal_interior_area = ") != std::string::npos);
}
