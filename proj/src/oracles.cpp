#include "gpe2/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace gpe2 {
namespace {

constexpr double kPi = std::numbers::pi;

} // namespace

ScalarField eval_eigenfunction(const OscillatorEigenfunction& e, const Grid2D& grid,
                               DipolePart part) {
    if (e.omega != grid.omega) {
        throw parameter_error("eigenfunction omega does not match the grid omega");
    }
    const double w = e.omega;
    ScalarField f(grid);

    if (e.kind == OscillatorEigenfunction::Kind::ground) {
        const double c = std::sqrt(w / kPi);
        for (int i = 0; i < grid.n; ++i) {
            const double x1 = grid.coord(i);
            for (int j = 0; j < grid.n; ++j) {
                const double x2 = grid.coord(j);
                f.at(i, j) = c * std::exp(-0.5 * w * (x1 * x1 + x2 * x2));
            }
        }
    } else {
        const double nrm = std::hypot(e.nu[0], e.nu[1]);
        if (!(nrm > 0.0)) throw parameter_error("dipole axis must be a nonzero vector");
        const double nx = e.nu[0] / nrm, ny = e.nu[1] / nrm;
        const double c = 2.0 / std::sqrt(kPi) * w;
        for (int i = 0; i < grid.n; ++i) {
            const double x1 = grid.coord(i);
            for (int j = 0; j < grid.n; ++j) {
                const double x2 = grid.coord(j);
                double t = x1 * nx + x2 * ny;
                if (part == DipolePart::positive) t = std::max(t, 0.0);
                if (part == DipolePart::negative) t = std::max(-t, 0.0);
                f.at(i, j) = c * t * std::exp(-0.5 * w * (x1 * x1 + x2 * x2));
            }
        }
    }
    f.zero_boundary();
    return f;
}

GaussianFrameField to_gaussian_frame(const ScalarField& u) {
    const Grid2D& g = u.grid();
    const double alpha = 1.0 / std::sqrt(2.0 * g.omega);
    GaussianFrameField out;
    out.n = g.n;
    out.omega = g.omega;
    out.half_width = g.half_width / alpha;
    out.values.assign(static_cast<std::size_t>(g.n) * g.n, 0.0);

    const double scale = std::sqrt(2.0 * kPi) * alpha;
    for (int i = 0; i < out.n; ++i) {
        const double x1 = out.coord(i);
        for (int j = 0; j < out.n; ++j) {
            const double x2 = out.coord(j);
            const double phys = sample_bilinear(u, alpha * x1, alpha * x2);
            out.at(i, j) = scale * phys * std::exp(0.25 * (x1 * x1 + x2 * x2));
        }
    }
    return out;
}

namespace {

std::vector<double> gaussian_node_weights(const GaussianFrameField& f) {
    std::vector<double> w(f.n);
    for (int k = 0; k < f.n; ++k) {
        const double x = f.coord(k);
        w[k] = std::exp(-0.5 * x * x);
    }
    return w;
}

} // namespace

double gaussian_mass(const GaussianFrameField& f) {
    const auto w = gaussian_node_weights(f);
    const double h2 = f.spacing() * f.spacing();
    double s = 0;
    for (int i = 0; i < f.n; ++i) {
        double row = 0;
        for (int j = 0; j < f.n; ++j) {
            const double v = f.at(i, j);
            row += v * v * w[j];
        }
        s += row * w[i];
    }
    return h2 * s / (2.0 * kPi);
}

double gaussian_dirichlet(const GaussianFrameField& f) {
    const int n = f.n;
    const double h = f.spacing();
    const auto w = gaussian_node_weights(f);
    std::vector<double> wm(n - 1); // weights at interval midpoints
    for (int k = 0; k + 1 < n; ++k) {
        const double x = f.coord(k) + 0.5 * h;
        wm[k] = std::exp(-0.5 * x * x);
    }
    double s = 0;
    for (int i = 0; i < n; ++i) {
        double row_x = 0, row_y = 0;
        if (i + 1 < n) {
            for (int j = 0; j < n; ++j) {
                const double d = f.at(i + 1, j) - f.at(i, j);
                row_x += d * d * w[j];
            }
            s += row_x * wm[i];
        }
        for (int j = 0; j + 1 < n; ++j) {
            const double d = f.at(i, j + 1) - f.at(i, j);
            row_y += d * d * wm[j];
        }
        s += row_y * w[i];
    }
    // h^2 (d/h)^2 = d^2
    return s / (2.0 * kPi);
}

double gaussian_rayleigh(const GaussianFrameField& f) {
    const double den = gaussian_mass(f);
    if (!(den > 0.0)) throw degenerate_input_error("Gaussian-Rayleigh quotient of a zero field");
    return gaussian_dirichlet(f) / den;
}

namespace {

// Eigenvalue count below sigma for the symmetric tridiagonal (d, e) via the
// Sturm / LDL^T sign recurrence.
int sturm_count(const std::vector<double>& d, const std::vector<double>& e, double sigma) {
    int count = 0;
    double q = d[0] - sigma;
    if (q < 0) ++count;
    for (std::size_t i = 1; i < d.size(); ++i) {
        if (q == 0.0) q = -1e-300;
        q = d[i] - sigma - e[i - 1] * e[i - 1] / q;
        if (q < 0) ++count;
    }
    return count;
}

} // namespace

double lambda_halfspace(double a) {
    if (a < -3.0 || a > 3.0) {
        throw parameter_error("lambda_halfspace: a must lie in [-3, 3]");
    }

    // 1D reduction on [a, a+12]: minimize int f'^2 w / int f^2 w with
    // w(t) = exp(-t^2/2) and f(a) = 0.  Second-order stencil with lumped
    // mass gives the generalized problem K f = Lambda W f; symmetrizing by
    // W^(-1/2) keeps it tridiagonal.
    constexpr int n_nodes = 4000;
    const double len = 12.0;
    const double dt = len / (n_nodes - 1);
    const int m = n_nodes - 2; // interior unknowns, Dirichlet at both ends

    std::vector<double> w(n_nodes), wm(n_nodes - 1);
    for (int k = 0; k < n_nodes; ++k) {
        const double t = a + k * dt;
        w[k] = std::exp(-0.5 * t * t);
    }
    for (int k = 0; k + 1 < n_nodes; ++k) {
        const double t = a + (k + 0.5) * dt;
        wm[k] = std::exp(-0.5 * t * t);
    }

    std::vector<double> diag(m), off(m - 1);
    const double inv_dt2 = 1.0 / (dt * dt);
    for (int k = 0; k < m; ++k) {
        const int node = k + 1;
        diag[k] = (wm[node - 1] + wm[node]) * inv_dt2 / w[node];
        if (k + 1 < m) {
            off[k] = -wm[node] * inv_dt2 / std::sqrt(w[node] * w[node + 1]);
        }
    }

    double lo = 0.0;
    double hi = 0.0;
    for (int k = 0; k < m; ++k) {
        double row = diag[k];
        if (k > 0) row += std::fabs(off[k - 1]);
        if (k + 1 < m) row += std::fabs(off[k]);
        hi = std::max(hi, row);
    }

    for (int it = 0; it < 200 && (hi - lo) > 1e-13 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (sturm_count(diag, off, mid) >= 1) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<std::pair<double, double>> lambda_halfspace_table(double from, double to, double step) {
    if (!(step > 0.0) && from != to) throw parameter_error("lambda table: step must be positive");
    std::vector<std::pair<double, double>> rows;
    if (from == to) {
        rows.emplace_back(from, lambda_halfspace(from));
        return rows;
    }
    for (double a = from; a <= to + 1e-12; a += step) {
        rows.emplace_back(a, lambda_halfspace(a));
    }
    return rows;
}

} // namespace gpe2
