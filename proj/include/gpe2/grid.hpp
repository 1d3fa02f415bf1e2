#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gpe2/errors.hpp"

namespace gpe2 {

// Uniform square grid on [-L, L]^2 with homogeneous Dirichlet boundary and
// an isotropic harmonic trap of frequency omega.  Node (i, j) sits at
// (-L + i*h, -L + j*h) with h = 2L/(N-1); values are stored row-major with
// i (the x1 index) as the slow index.
struct Grid2D {
    double half_width = 0.0; // L
    int n = 0;               // points per dimension
    double omega = 1.0;      // trap frequency

    Grid2D() = default;
    Grid2D(double L, int N, double w);

    double spacing() const { return 2.0 * half_width / (n - 1); }
    double coord(int k) const { return -half_width + k * spacing(); }
    std::size_t size() const { return static_cast<std::size_t>(n) * n; }

    // Box big enough that the Gaussian tail of a trapped state is below
    // solver tolerances at the boundary.
    bool meets_truncation_rule() const;

    bool operator==(const Grid2D&) const = default;
};

// Real nonnegative field sampled on a Grid2D.  The boundary ring is kept
// exactly zero by every producing operation.
class ScalarField {
public:
    ScalarField() = default;
    explicit ScalarField(const Grid2D& grid)
        : grid_(grid), values_(grid.size(), 0.0) {}

    const Grid2D& grid() const { return grid_; }
    int n() const { return grid_.n; }

    double* data() { return values_.data(); }
    const double* data() const { return values_.data(); }
    std::span<const double> values() const { return values_; }

    double& at(int i, int j) { return values_[static_cast<std::size_t>(i) * grid_.n + j]; }
    double at(int i, int j) const { return values_[static_cast<std::size_t>(i) * grid_.n + j]; }

    void fill(double x) { values_.assign(values_.size(), x); }
    void zero_boundary();

    // h^2 * sum of squares.
    double mass() const;
    // Rescale to unit mass; throws degenerate_input_error on a zero field.
    void normalize_mass();

    double max_value() const;
    double max_abs_value() const;

private:
    Grid2D grid_;
    std::vector<double> values_;
};

void require_same_grid(const ScalarField& a, const ScalarField& b);

// 5-point discrete Laplacian; zero on the boundary ring.
ScalarField laplacian(const ScalarField& f);

// Rectangle-rule integral h^2 * sum f_ij.
double integrate(const ScalarField& f);

// h^2 * sum f_ij * g_ij.
double inner(const ScalarField& f, const ScalarField& g);

// Forward-difference Dirichlet energy, summation-by-parts exact against
// laplacian(): integrate(-laplacian(f) * f) == gradient_squared_integral(f).
double gradient_squared_integral(const ScalarField& f);

// L2 norm sqrt(h^2 sum f^2).
double norm_l2(const ScalarField& f);

// Trap potential samples omega^2 |x|^2 (boundary ring included).
ScalarField trap_potential(const Grid2D& grid);

// Fraction of angular spectral mass in modes m = 0..m_max, measured on
// polar rings (256 samples per ring, bilinear interpolation, ring radii at
// multiples of h up to L).  Weights sum to <= 1.
std::vector<double> angular_modes(const ScalarField& f, int m_max);

// Bilinear sample; coordinates clamped to the box.
double sample_bilinear(const ScalarField& f, double x1, double x2);

// GPE2 field file: magic "GPE2", u16 version = 1, u32 N, f64 L, f64 omega,
// then N*N f64 values row-major, all little-endian.
void save_field(const ScalarField& f, const std::string& path);
ScalarField load_field(const std::string& path);

} // namespace gpe2
