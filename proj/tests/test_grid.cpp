#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <random>

#include "gpe2/grid.hpp"
#include "gpe2/oracles.hpp"
#include "oracle_utils.hpp"

using namespace gpe2;

namespace {

constexpr double kPi = std::numbers::pi;

ScalarField gaussian_bare(const Grid2D& g) {
    // exp(-|x|^2/2) without normalization
    ScalarField f(g);
    for (int i = 1; i < g.n - 1; ++i) {
        const double x1 = g.coord(i);
        for (int j = 1; j < g.n - 1; ++j) {
            const double x2 = g.coord(j);
            f.at(i, j) = std::exp(-0.5 * (x1 * x1 + x2 * x2));
        }
    }
    return f;
}

ScalarField ground_state(const Grid2D& g) {
    return eval_eigenfunction({OscillatorEigenfunction::Kind::ground, g.omega, {1, 0}}, g);
}

} // namespace

TEST_CASE("grid construction guards") {
    CHECK_THROWS_AS(Grid2D(8.0, 8, 1.0), parameter_error);
    CHECK_THROWS_AS(Grid2D(-1.0, 64, 1.0), parameter_error);
    CHECK_THROWS_AS(Grid2D(8.0, 64, 0.0), parameter_error);
    const Grid2D g(8.0, 257, 1.0);
    CHECK(g.spacing() == doctest::Approx(16.0 / 256.0));
    CHECK(g.meets_truncation_rule());
    CHECK_FALSE(Grid2D(2.0, 64, 1.0).meets_truncation_rule());
    // N odd puts the origin on the grid
    CHECK(g.coord(128) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("laplacian: zero field, harmonic coordinate, Gaussian at origin") {
    const Grid2D g(8.0, 257, 1.0);

    ScalarField zero(g);
    const ScalarField lz = laplacian(zero);
    CHECK(lz.max_abs_value() == 0.0);

    // f = x1 on the interior is discretely harmonic two cells in
    ScalarField lin(g);
    for (int i = 1; i < g.n - 1; ++i) {
        for (int j = 1; j < g.n - 1; ++j) lin.at(i, j) = g.coord(i);
    }
    const ScalarField ll = laplacian(lin);
    for (int i = 2; i < g.n - 2; ++i) {
        for (int j = 2; j < g.n - 2; ++j) {
            CHECK(std::fabs(ll.at(i, j)) < 1e-11);
        }
    }

    // exact Laplacian of exp(-|x|^2/2) at the origin is -2
    const ScalarField lg = laplacian(gaussian_bare(g));
    CHECK(lg.at(128, 128) == doctest::Approx(-2.0).epsilon(1e-3));
}

TEST_CASE("laplacian converges at second order") {
    const double exact = -2.0;
    double err[2];
    int idx = 0;
    for (int n : {129, 257}) {
        const Grid2D g(8.0, n, 1.0);
        const ScalarField lg = laplacian(gaussian_bare(g));
        err[idx++] = std::fabs(lg.at((n - 1) / 2, (n - 1) / 2) - exact);
    }
    const double ratio = err[0] / err[1];
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
}

TEST_CASE("integrate: closed-form masses") {
    const Grid2D g(8.0, 257, 1.0);

    CHECK(integrate(ScalarField(g)) == 0.0);

    // int phi0^2 = 1, cross-checked against the 1D moment oracle
    const ScalarField phi = ground_state(g);
    ScalarField phi2(g);
    for (int i = 0; i < g.n; ++i) {
        for (int j = 0; j < g.n; ++j) phi2.at(i, j) = phi.at(i, j) * phi.at(i, j);
    }
    const double m0 = oracle::gauss_moment(0, 1.0);
    const double oracle_mass = (1.0 / kPi) * m0 * m0;
    CHECK(oracle_mass == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(integrate(phi2) == doctest::Approx(1.0).epsilon(1e-8));

    // heineken normalization: int w^2 = (4/pi) * m2 * m0 = 2
    const OscillatorEigenfunction dip{OscillatorEigenfunction::Kind::second_dipole, 1.0, {1, 0}};
    const ScalarField w = eval_eigenfunction(dip, g);
    ScalarField w2(g);
    for (int i = 0; i < g.n; ++i) {
        for (int j = 0; j < g.n; ++j) w2.at(i, j) = w.at(i, j) * w.at(i, j);
    }
    const double oracle_w = (4.0 / kPi) * oracle::gauss_moment(2, 1.0) * oracle::gauss_moment(0, 1.0);
    CHECK(oracle_w == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(integrate(w2) == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("integrate is linear and monotone") {
    const Grid2D g(6.5, 65, 1.0);
    std::mt19937_64 rng(5);
    ScalarField a = oracle::random_dirichlet_field(g, rng);
    ScalarField b = oracle::random_dirichlet_field(g, rng);
    ScalarField combo(g);
    for (int i = 0; i < g.n; ++i) {
        for (int j = 0; j < g.n; ++j) combo.at(i, j) = 2.0 * a.at(i, j) + 3.0 * b.at(i, j);
    }
    CHECK(integrate(combo) ==
          doctest::Approx(2.0 * integrate(a) + 3.0 * integrate(b)).epsilon(1e-12));

    ScalarField nonneg(g);
    for (int i = 0; i < g.n; ++i) {
        for (int j = 0; j < g.n; ++j) nonneg.at(i, j) = std::fabs(a.at(i, j));
    }
    CHECK(integrate(nonneg) >= 0.0);
}

TEST_CASE("gradient_squared_integral: Gaussian kinetic energy and SBP exactness") {
    const Grid2D g(8.0, 257, 1.0);
    const ScalarField phi = ground_state(g);

    // int |grad phi0|^2 = omega
    CHECK(gradient_squared_integral(phi) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(gradient_squared_integral(ScalarField(g)) == 0.0);

    // summation by parts is an algebraic identity of the discretization
    std::mt19937_64 rng(17);
    for (int rep = 0; rep < 3; ++rep) {
        const Grid2D gs(6.0, 48 + 7 * rep, 1.0);
        ScalarField f = oracle::random_dirichlet_field(gs, rng);
        ScalarField q = oracle::random_dirichlet_field(gs, rng);
        const double lhs = inner(laplacian(f), q);
        // cross form of the forward differences
        double cross = 0;
        for (int i = 0; i < gs.n; ++i) {
            for (int j = 0; j < gs.n; ++j) {
                if (i + 1 < gs.n) {
                    cross += (f.at(i + 1, j) - f.at(i, j)) * (q.at(i + 1, j) - q.at(i, j));
                }
                if (j + 1 < gs.n) {
                    cross += (f.at(i, j + 1) - f.at(i, j)) * (q.at(i, j + 1) - q.at(i, j));
                }
            }
        }
        CHECK(-lhs == doctest::Approx(cross).epsilon(1e-12));
        CHECK(inner(laplacian(f), f) == doctest::Approx(-gradient_squared_integral(f)).epsilon(1e-12));
    }
}

TEST_CASE("angular modes: radial, dipole part, zero, guards") {
    const Grid2D g(8.0, 257, 1.0);

    const auto radial = angular_modes(ground_state(g), 4);
    CHECK(radial[0] >= 1.0 - 1e-6);

    const OscillatorEigenfunction dip{OscillatorEigenfunction::Kind::second_dipole, 1.0, {1, 0}};
    const ScalarField wp = eval_eigenfunction(dip, g, DipolePart::positive);
    const auto modes = angular_modes(wp, 8);
    // oracle: angular profile of w+ along every ring is (cos)^+
    CHECK(modes[0] == doctest::Approx(oracle::cos_plus_mode_fraction(0)).epsilon(2e-3));
    CHECK(modes[1] == doctest::Approx(oracle::cos_plus_mode_fraction(1)).epsilon(2e-3));
    CHECK(modes[1] >= 0.3);
    CHECK(modes[0] + modes[1] >= 0.9);

    const auto zeros = angular_modes(ScalarField(g), 3);
    for (double w : zeros) CHECK(w == 0.0);

    CHECK_THROWS_AS(angular_modes(wp, 128), parameter_error);
    CHECK_THROWS_AS(angular_modes(wp, 0), parameter_error);
}

TEST_CASE("angular mode weights sum to at most one") {
    const Grid2D g(6.0, 97, 1.0);
    std::mt19937_64 rng(23);
    for (int rep = 0; rep < 3; ++rep) {
        const ScalarField f = oracle::random_dirichlet_field(g, rng);
        const auto w = angular_modes(f, 12);
        double sum = 0;
        for (double x : w) {
            CHECK(x >= 0.0);
            sum += x;
        }
        CHECK(sum <= 1.0 + 1e-12);
    }
}

TEST_CASE("field file round-trip is bit exact") {
    const Grid2D g(6.0, 33, 2.0);
    std::mt19937_64 rng(29);
    ScalarField f = oracle::random_dirichlet_field(g, rng);

    const std::string path = (std::filesystem::temp_directory_path() / "gpe2_roundtrip.gpe2").string();
    save_field(f, path);
    const ScalarField f2 = load_field(path);
    CHECK(f2.grid() == f.grid());
    for (std::size_t k = 0; k < g.size(); ++k) {
        CHECK(f.values()[k] == f2.values()[k]);
    }
    std::filesystem::remove(path);
}

TEST_CASE("field file rejects garbage") {
    namespace fs = std::filesystem;
    const std::string path = (fs::temp_directory_path() / "gpe2_bad.gpe2").string();
    {
        std::FILE* fp = std::fopen(path.c_str(), "wb");
        std::fputs("not a field file", fp);
        std::fclose(fp);
    }
    CHECK_THROWS_AS(load_field(path), io_error);
    fs::remove(path);
    CHECK_THROWS_AS(load_field(path), io_error);
}

TEST_CASE("grid mismatch is detected") {
    const Grid2D a(8.0, 33, 1.0);
    const Grid2D b(8.0, 65, 1.0);
    CHECK_THROWS_AS(inner(ScalarField(a), ScalarField(b)), grid_mismatch_error);
}
