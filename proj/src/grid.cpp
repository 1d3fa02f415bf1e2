#include "gpe2/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gpe2/kernels.hpp"

namespace gpe2 {

Grid2D::Grid2D(double L, int N, double w) : half_width(L), n(N), omega(w) {
    if (!(L > 0.0)) throw parameter_error("grid half-width must be positive");
    if (N < 16) throw parameter_error("grid needs at least 16 points per dimension");
    if (!(w > 0.0)) throw parameter_error("trap frequency omega must be positive");
}

bool Grid2D::meets_truncation_rule() const {
    return half_width >= 6.0 / std::sqrt(omega);
}

void ScalarField::zero_boundary() {
    const int N = grid_.n;
    for (int j = 0; j < N; ++j) {
        at(0, j) = 0.0;
        at(N - 1, j) = 0.0;
    }
    for (int i = 0; i < N; ++i) {
        at(i, 0) = 0.0;
        at(i, N - 1) = 0.0;
    }
}

double ScalarField::mass() const {
    const double h = grid_.spacing();
    return h * h * kernels::active().dot(data(), data(), values_.size());
}

void ScalarField::normalize_mass() {
    const double m = mass();
    if (!(m > 0.0)) throw degenerate_input_error("cannot normalize a zero field");
    kernels::active().scale(1.0 / std::sqrt(m), data(), values_.size());
}

double ScalarField::max_value() const {
    return kernels::active().max_val(data(), values_.size());
}

double ScalarField::max_abs_value() const {
    return kernels::active().max_abs(data(), values_.size());
}

void require_same_grid(const ScalarField& a, const ScalarField& b) {
    if (!(a.grid() == b.grid())) {
        throw grid_mismatch_error("fields live on different grids");
    }
}

ScalarField laplacian(const ScalarField& f) {
    ScalarField out(f.grid());
    const double h = f.grid().spacing();
    const double inv_h2 = 1.0 / (h * h);
    kernels::active().stencil5(f.data(), out.data(), -4.0 * inv_h2, inv_h2, f.n());
    return out;
}

double integrate(const ScalarField& f) {
    const double h = f.grid().spacing();
    double s0 = 0, s1 = 0, s2 = 0, s3 = 0;
    const double* x = f.data();
    const std::size_t m = f.grid().size();
    std::size_t i = 0;
    for (; i + 4 <= m; i += 4) {
        s0 += x[i];
        s1 += x[i + 1];
        s2 += x[i + 2];
        s3 += x[i + 3];
    }
    for (; i < m; ++i) s0 += x[i];
    return h * h * ((s0 + s1) + (s2 + s3));
}

double inner(const ScalarField& f, const ScalarField& g) {
    require_same_grid(f, g);
    const double h = f.grid().spacing();
    return h * h * kernels::active().dot(f.data(), g.data(), f.grid().size());
}

double gradient_squared_integral(const ScalarField& f) {
    // h^2 * ((df/h)^2) == (df)^2, so no h factor appears.
    return kernels::active().grad_sq_sum(f.data(), f.n());
}

double norm_l2(const ScalarField& f) {
    return std::sqrt(std::max(0.0, f.mass()));
}

ScalarField trap_potential(const Grid2D& grid) {
    ScalarField v(grid);
    const double w2 = grid.omega * grid.omega;
    for (int i = 0; i < grid.n; ++i) {
        const double x1 = grid.coord(i);
        for (int j = 0; j < grid.n; ++j) {
            const double x2 = grid.coord(j);
            v.at(i, j) = w2 * (x1 * x1 + x2 * x2);
        }
    }
    return v;
}

double sample_bilinear(const ScalarField& f, double x1, double x2) {
    const Grid2D& g = f.grid();
    const double h = g.spacing();
    double s = (x1 + g.half_width) / h;
    double t = (x2 + g.half_width) / h;
    s = std::clamp(s, 0.0, static_cast<double>(g.n - 1));
    t = std::clamp(t, 0.0, static_cast<double>(g.n - 1));
    int i = std::min(static_cast<int>(s), g.n - 2);
    int j = std::min(static_cast<int>(t), g.n - 2);
    const double a = s - i;
    const double b = t - j;
    return (1 - a) * (1 - b) * f.at(i, j) + a * (1 - b) * f.at(i + 1, j) +
           (1 - a) * b * f.at(i, j + 1) + a * b * f.at(i + 1, j + 1);
}

std::vector<double> angular_modes(const ScalarField& f, int m_max) {
    if (m_max < 1) throw parameter_error("angular_modes: m_max must be >= 1");
    if (m_max >= 128) throw parameter_error("angular_modes: m_max must be < 128 (256 samples per ring)");

    constexpr int n_theta = 256;
    const Grid2D& g = f.grid();
    const double h = g.spacing();
    const int n_rings = static_cast<int>(std::floor(g.half_width / h + 1e-9));

    std::vector<double> cos_t(n_theta), sin_t(n_theta), samples(n_theta);
    for (int k = 0; k < n_theta; ++k) {
        const double th = 2.0 * std::numbers::pi * k / n_theta;
        cos_t[k] = std::cos(th);
        sin_t[k] = std::sin(th);
    }

    std::vector<double> numer(m_max + 1, 0.0);
    double denom = 0.0;

    for (int r = 1; r <= n_rings; ++r) {
        const double rad = r * h;
        double parseval = 0.0;
        for (int k = 0; k < n_theta; ++k) {
            const double val = sample_bilinear(f, rad * cos_t[k], rad * sin_t[k]);
            samples[k] = val;
            parseval += val * val;
        }
        denom += parseval / n_theta;

        for (int m = 0; m <= m_max; ++m) {
            double re = 0.0, im = 0.0;
            for (int k = 0; k < n_theta; ++k) {
                // angle m*theta_k mod n_theta reuses the sample tables
                const int idx = static_cast<int>((static_cast<long long>(m) * k) % n_theta);
                re += samples[k] * cos_t[idx];
                im -= samples[k] * sin_t[idx];
            }
            const double c2 = (re * re + im * im) / (static_cast<double>(n_theta) * n_theta);
            numer[m] += (m == 0) ? c2 : 2.0 * c2; // fold the conjugate mode
        }
    }

    std::vector<double> weights(m_max + 1, 0.0);
    if (denom > 0.0) {
        for (int m = 0; m <= m_max; ++m) weights[m] = numer[m] / denom;
    }
    return weights;
}

} // namespace gpe2
