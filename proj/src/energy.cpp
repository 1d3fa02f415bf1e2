#include "gpe2/energy.hpp"

#include <cmath>
#include <vector>

#include "gpe2/kernels.hpp"

namespace gpe2 {
namespace {

std::vector<double> trap_samples_1d(const Grid2D& g) {
    std::vector<double> vsq(g.n);
    const double w2 = g.omega * g.omega;
    for (int k = 0; k < g.n; ++k) {
        const double x = g.coord(k);
        vsq[k] = w2 * x * x;
    }
    return vsq;
}

// Marks nodes within Chebyshev distance `band` of a sign change of u - v.
std::vector<unsigned char> nodal_band_mask(const ScalarField& u, const ScalarField& v, int band) {
    const int n = u.n();
    std::vector<unsigned char> crossing(static_cast<std::size_t>(n) * n, 0);
    auto d = [&](int i, int j) { return u.at(i, j) - v.at(i, j); };
    // sign change including exact zeros, so a nodal line running through
    // grid nodes is still caught
    auto crosses = [](double a, double b) {
        if (a == 0.0 && b == 0.0) return false;
        return (a <= 0.0 && b >= 0.0) || (a >= 0.0 && b <= 0.0);
    };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double c = d(i, j);
            if (i + 1 < n && crosses(c, d(i + 1, j))) {
                crossing[static_cast<std::size_t>(i) * n + j] = 1;
                crossing[static_cast<std::size_t>(i + 1) * n + j] = 1;
            }
            if (j + 1 < n && crosses(c, d(i, j + 1))) {
                crossing[static_cast<std::size_t>(i) * n + j] = 1;
                crossing[static_cast<std::size_t>(i) * n + j + 1] = 1;
            }
        }
    }
    std::vector<unsigned char> mask(crossing.size(), 0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (!crossing[static_cast<std::size_t>(i) * n + j]) continue;
            for (int di = -band; di <= band; ++di) {
                for (int dj = -band; dj <= band; ++dj) {
                    const int a = i + di, b = j + dj;
                    if (a >= 0 && a < n && b >= 0 && b < n) {
                        mask[static_cast<std::size_t>(a) * n + b] = 1;
                    }
                }
            }
        }
    }
    return mask;
}

} // namespace

void CouplingParams::validate() const {
    if (g1 < 0.0) throw parameter_error("g1 must be nonnegative (repulsive intracomponent coupling)");
    if (g2 < 0.0) throw parameter_error("g2 must be nonnegative (repulsive intracomponent coupling)");
    if (g12 < 0.0) throw parameter_error("g12 must be nonnegative (repulsive intercomponent coupling)");
    if (!(omega > 0.0)) throw parameter_error("omega must be positive");
}

EnergyBreakdown energy_total(const ScalarField& u, const ScalarField& v,
                             const CouplingParams& g) {
    require_same_grid(u, v);
    g.validate();
    const auto& k = kernels::active();
    const Grid2D& grid = u.grid();
    const double h2 = grid.spacing() * grid.spacing();
    const std::size_t m = grid.size();
    const auto vsq = trap_samples_1d(grid);

    EnergyBreakdown e;
    e.kinetic_u = 0.5 * k.grad_sq_sum(u.data(), grid.n);
    e.trap_u = 0.5 * h2 * k.trap_sq_sum(u.data(), vsq.data(), grid.n);
    e.quartic_u = 0.25 * g.g1 * h2 * k.quartic_sum(u.data(), m);
    e.kinetic_v = 0.5 * k.grad_sq_sum(v.data(), grid.n);
    e.trap_v = 0.5 * h2 * k.trap_sq_sum(v.data(), vsq.data(), grid.n);
    e.quartic_v = 0.25 * g.g2 * h2 * k.quartic_sum(v.data(), m);
    e.interaction = 0.5 * g.g12 * h2 * k.cross_sq_sum(u.data(), v.data(), m);
    // grouped so that swapping (u, g1) <-> (v, g2) reproduces the total bit
    // for bit
    e.total = ((e.kinetic_u + e.kinetic_v) + (e.trap_u + e.trap_v)) +
              ((e.quartic_u + e.quartic_v) + e.interaction);
    return e;
}

double energy_segregated(const ScalarField& u, const ScalarField& v,
                         double g1, double g2, double omega) {
    return energy_total(u, v, CouplingParams{g1, g2, 0.0, omega}).total;
}

MultiplierPair lagrange_multipliers(const ScalarField& u, const ScalarField& v,
                                    const CouplingParams& g) {
    require_same_grid(u, v);
    const auto& k = kernels::active();
    const Grid2D& grid = u.grid();
    const double h2 = grid.spacing() * grid.spacing();
    const std::size_t m = grid.size();
    const auto vsq = trap_samples_1d(grid);

    const double cross = h2 * k.cross_sq_sum(u.data(), v.data(), m);
    MultiplierPair lm;
    lm.lambda = k.grad_sq_sum(u.data(), grid.n) + h2 * k.trap_sq_sum(u.data(), vsq.data(), grid.n) +
                g.g1 * h2 * k.quartic_sum(u.data(), m) + g.g12 * cross;
    lm.mu = k.grad_sq_sum(v.data(), grid.n) + h2 * k.trap_sq_sum(v.data(), vsq.data(), grid.n) +
            g.g2 * h2 * k.quartic_sum(v.data(), m) + g.g12 * cross;
    return lm;
}

std::pair<ScalarField, ScalarField> energy_gradient(const ScalarField& u,
                                                    const ScalarField& v,
                                                    const CouplingParams& g) {
    require_same_grid(u, v);
    const auto& k = kernels::active();
    const Grid2D& grid = u.grid();
    const double h = grid.spacing();
    const auto vsq = trap_samples_1d(grid);

    std::pair<ScalarField, ScalarField> out{ScalarField(grid), ScalarField(grid)};
    k.gp_operator(u.data(), v.data(), out.first.data(), vsq.data(), g.g1, g.g12,
                  1.0 / (h * h), grid.n);
    k.gp_operator(v.data(), u.data(), out.second.data(), vsq.data(), g.g2, g.g12,
                  1.0 / (h * h), grid.n);
    return out;
}

std::pair<double, double> gp_residual(const ScalarField& u, const ScalarField& v,
                                      const CouplingParams& g, const MultiplierPair& lm,
                                      ResidualMode mode) {
    require_same_grid(u, v);
    auto [gu, gv] = energy_gradient(u, v, g);
    const auto& k = kernels::active();
    const std::size_t m = u.grid().size();
    k.axpby(-lm.lambda, u.data(), 1.0, gu.data(), m);
    k.axpby(-lm.mu, v.data(), 1.0, gv.data(), m);

    const double h2 = u.grid().spacing() * u.grid().spacing();
    if (mode == ResidualMode::exclude_nodal_band) {
        const auto mask = nodal_band_mask(u, v, 2);
        double su = 0, sv = 0;
        const double* ru = gu.data();
        const double* rv = gv.data();
        for (std::size_t i = 0; i < m; ++i) {
            if (mask[i]) continue;
            su += ru[i] * ru[i];
            sv += rv[i] * rv[i];
        }
        return {std::sqrt(h2 * su), std::sqrt(h2 * sv)};
    }
    return {std::sqrt(h2 * k.dot(gu.data(), gu.data(), m)),
            std::sqrt(h2 * k.dot(gv.data(), gv.data(), m))};
}

} // namespace gpe2
