#include "gpe2/solver.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <random>
#include <vector>

#include "gpe2/kernels.hpp"
#include "gpe2/oracles.hpp"

namespace gpe2 {
namespace {

constexpr double kCgRelTol = 1e-10;

std::vector<double> trap_samples_1d(const Grid2D& g) {
    std::vector<double> vsq(g.n);
    const double w2 = g.omega * g.omega;
    for (int k = 0; k < g.n; ++k) {
        const double x = g.coord(k);
        vsq[k] = w2 * x * x;
    }
    return vsq;
}

// Shared per-grid scratch for the implicit solves.
struct FlowWorkspace {
    Grid2D grid;
    std::vector<double> vsq; // omega^2 x^2 samples
    std::vector<double> diag;
    std::vector<double> rhs, r, p, ap;

    explicit FlowWorkspace(const Grid2D& g)
        : grid(g), vsq(trap_samples_1d(g)), diag(g.size(), 0.0),
          rhs(g.size(), 0.0), r(g.size(), 0.0), p(g.size(), 0.0), ap(g.size(), 0.0) {}

    // diag of I + tau(-lap + V + W), W = g_self u^2 + g12 v^2 frozen at the
    // step's input fields
    void build_diag(const double* u, const double* v, double g_self, double g12, double tau) {
        const double h = grid.spacing();
        const double c = 1.0 + tau * 4.0 / (h * h);
        const int n = grid.n;
        for (int i = 0; i < n; ++i) {
            const std::size_t base = static_cast<std::size_t>(i) * n;
            for (int j = 0; j < n; ++j) {
                const double uc = u[base + j];
                const double vc = v[base + j];
                diag[base + j] = c + tau * (vsq[i] + vsq[j] + g_self * uc * uc + g12 * vc * vc);
            }
        }
    }
};

// CG on the frozen-coefficient operator with warm start; returns iterations.
int cg_solve(FlowWorkspace& ws, double tau, const double* b, double* x) {
    const auto& k = kernels::active();
    const int n = ws.grid.n;
    const std::size_t m = ws.grid.size();
    const double h = ws.grid.spacing();
    const double off = -tau / (h * h);

    const double b_norm2 = k.dot(b, b, m);
    if (b_norm2 == 0.0) {
        std::fill(x, x + m, 0.0);
        return 0;
    }
    const double tol2 = kCgRelTol * kCgRelTol * b_norm2;

    k.helmholtz(x, ws.ap.data(), ws.diag.data(), off, n);
    for (std::size_t i = 0; i < m; ++i) ws.r[i] = b[i] - ws.ap[i];
    ws.p = ws.r;
    double rr = k.dot(ws.r.data(), ws.r.data(), m);

    const int max_iters = 10 * n;
    for (int it = 1; it <= max_iters; ++it) {
        if (rr <= tol2) return it - 1;
        k.helmholtz(ws.p.data(), ws.ap.data(), ws.diag.data(), off, n);
        const double pap = k.dot(ws.p.data(), ws.ap.data(), m);
        const double alpha = rr / pap;
        k.axpby(alpha, ws.p.data(), 1.0, x, m);
        k.axpby(-alpha, ws.ap.data(), 1.0, ws.r.data(), m);
        const double rr_new = k.dot(ws.r.data(), ws.r.data(), m);
        k.axpby(1.0, ws.r.data(), rr_new / rr, ws.p.data(), m);
        rr = rr_new;
    }
    throw numerical_error("inner conjugate-gradient solve did not converge within 10*N iterations");
}

void renormalize(ScalarField& f) {
    f.zero_boundary();
    f.normalize_mass();
}

// One component's half of a Jacobi step:
//   (I + tau(-lap + V + g_self u^2 + g12 v^2)) u* = (1 + tau lambda) u
// followed by renormalization.  The potential terms are frozen at the step
// input, so the step has no explicit stiff term and a discrete stationary
// state is an exact fixed point.
int step_component(FlowWorkspace& ws, const ScalarField& self, const ScalarField& other,
                   double g_self, double g12, double shift, double tau, ScalarField& out) {
    const auto& k = kernels::active();
    const std::size_t m = ws.grid.size();
    ws.build_diag(self.data(), other.data(), g_self, g12, tau);
    k.flow_rhs(self.data(), other.data(), ws.rhs.data(), 0.0, 0.0, shift, tau, m);
    out = self; // warm start
    const int iters = cg_solve(ws, tau, ws.rhs.data(), out.data());
    renormalize(out);
    return iters;
}

struct StepStats {
    EnergyBreakdown energy;
    MultiplierPair lm;
    double residual_u = 0, residual_v = 0;
};

StepStats evaluate_state(const ScalarField& u, const ScalarField& v, const CouplingParams& g) {
    StepStats s;
    s.energy = energy_total(u, v, g);
    s.lm = lagrange_multipliers(u, v, g);
    auto res = gp_residual(u, v, g, s.lm);
    s.residual_u = res.first;
    s.residual_v = res.second;
    return s;
}

ScalarField ground_gaussian(const Grid2D& grid) {
    return eval_eigenfunction({OscillatorEigenfunction::Kind::ground, grid.omega, {1, 0}}, grid);
}

// Smooth random modulation of the Gaussian envelope.  Node-wise white noise
// has an almost perfectly cancelling dipole moment and leaves the flow
// crawling away from the symmetric saddle; a low-order bump mixture carries
// an O(1) asymmetry instead.
ScalarField noisy_seed(const Grid2D& grid, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> pos(-0.5 * grid.half_width, 0.5 * grid.half_width);
    std::uniform_real_distribution<double> width(0.8, 2.0);
    std::uniform_real_distribution<double> amp(-0.8, 0.8);
    constexpr int n_bumps = 5;
    std::array<std::array<double, 4>, n_bumps> bumps;
    for (auto& b : bumps) b = {pos(rng), pos(rng), width(rng), amp(rng)};

    ScalarField f = ground_gaussian(grid);
    for (int i = 1; i < grid.n - 1; ++i) {
        const double x1 = grid.coord(i);
        for (int j = 1; j < grid.n - 1; ++j) {
            const double x2 = grid.coord(j);
            double mod = 1.0;
            for (const auto& b : bumps) {
                const double r2 = (x1 - b[0]) * (x1 - b[0]) + (x2 - b[1]) * (x2 - b[1]);
                mod += b[3] * std::exp(-r2 / (2.0 * b[2] * b[2]));
            }
            f.at(i, j) = std::fabs(f.at(i, j) * mod);
        }
    }
    renormalize(f);
    return f;
}

GroundStateSolution solve_single(const SolverConfig& cfg, const Grid2D& grid,
                                 ScalarField u, ScalarField v,
                                 std::vector<GroundStateSolution>* trail) {
    FlowWorkspace ws(grid);
    GroundStateSolution sol;

    for (const CouplingParams& g : cfg.continuation_schedule) {
        g.validate();
        double tau = cfg.time_step;
        int non_increasing = 0;
        bool converged = false;
        int used_iters = 0;

        StepStats cur = evaluate_state(u, v, g);
        for (int it = 1; it <= cfg.max_iters; ++it) {
            used_iters = it;
            ScalarField u_next(grid), v_next(grid);
            step_component(ws, u, v, g.g1, g.g12, cur.lm.lambda, tau, u_next);
            step_component(ws, v, u, g.g2, g.g12, cur.lm.mu, tau, v_next);

            StepStats next = evaluate_state(u_next, v_next, g);
            const double accept_slack = 1e-9 * std::max(1.0, std::fabs(cur.energy.total));
            if (next.energy.total > cur.energy.total + accept_slack) {
                // reject, retry from the same state with a smaller step
                tau = std::max(0.5 * tau, 1e-10);
                non_increasing = 0;
                continue;
            }

            const double decrement = cur.energy.total - next.energy.total;
            u = std::move(u_next);
            v = std::move(v_next);
            cur = next;

            if (++non_increasing >= 50 && tau < cfg.time_step) {
                tau = std::min(cfg.time_step, 1.2 * tau);
                non_increasing = 0;
            }

            if (decrement <= cfg.energy_tol &&
                std::max(cur.residual_u, cur.residual_v) <= cfg.residual_tol) {
                converged = true;
                break;
            }
        }

        sol.u = u;
        sol.v = v;
        sol.g = g;
        sol.energy = cur.energy;
        sol.multipliers = cur.lm;
        sol.residual_u = cur.residual_u;
        sol.residual_v = cur.residual_v;
        sol.iterations = used_iters;
        sol.converged = converged;
        if (trail) trail->push_back(sol);
    }
    return sol;
}

} // namespace

void SolverConfig::validate() const {
    if (!(time_step > 0.0)) throw parameter_error("time_step must be positive");
    if (!(residual_tol > 0.0)) throw parameter_error("tol_residual must be positive");
    if (!(energy_tol > 0.0)) throw parameter_error("tol_energy must be positive");
    if (max_iters < 1) throw parameter_error("max_iters must be at least 1");
    if (continuation_schedule.empty()) throw parameter_error("continuation schedule must be nonempty");
    for (const auto& g : continuation_schedule) g.validate();
    for (std::size_t i = 1; i < continuation_schedule.size(); ++i) {
        if (continuation_schedule[i].g12 < continuation_schedule[i - 1].g12) {
            throw parameter_error("continuation schedule must have nondecreasing g12");
        }
    }
    if (seed_kind == SeedKind::from_file && (seed_u_path.empty() || seed_v_path.empty())) {
        throw parameter_error("seed_kind=from_file requires seed_u and seed_v paths");
    }
}

FlowStepResult flow_step(const ScalarField& u, const ScalarField& v,
                         const CouplingParams& g, double tau) {
    require_same_grid(u, v);
    g.validate();
    if (!(tau > 0.0)) throw parameter_error("flow_step: tau must be positive");

    FlowWorkspace ws(u.grid());
    const MultiplierPair lm = lagrange_multipliers(u, v, g);
    FlowStepResult out{ScalarField(u.grid()), ScalarField(u.grid()), 0, 0};
    out.cg_iters_u = step_component(ws, u, v, g.g1, g.g12, lm.lambda, tau, out.u);
    out.cg_iters_v = step_component(ws, v, u, g.g2, g.g12, lm.mu, tau, out.v);
    return out;
}

std::pair<ScalarField, ScalarField> make_seed(const SolverConfig& cfg, const Grid2D& grid) {
    switch (cfg.seed_kind) {
    case SeedKind::symmetric_gaussian: {
        ScalarField phi = ground_gaussian(grid);
        return {phi, phi};
    }
    case SeedKind::dipole_perturbed: {
        ScalarField phi = ground_gaussian(grid);
        ScalarField u(grid), v(grid);
        const double L = grid.half_width;
        for (int i = 0; i < grid.n; ++i) {
            const double x1 = grid.coord(i);
            for (int j = 0; j < grid.n; ++j) {
                u.at(i, j) = phi.at(i, j) * (1.0 + 0.3 * x1 / L);
                v.at(i, j) = phi.at(i, j) * (1.0 - 0.3 * x1 / L);
            }
        }
        renormalize(u);
        renormalize(v);
        return {u, v};
    }
    case SeedKind::random: {
        std::mt19937_64 rng(cfg.rng_seed);
        ScalarField u = noisy_seed(grid, rng);
        ScalarField v = noisy_seed(grid, rng);
        return {u, v};
    }
    case SeedKind::from_file: {
        ScalarField u = load_field(cfg.seed_u_path);
        ScalarField v = load_field(cfg.seed_v_path);
        if (!(u.grid() == grid) || !(v.grid() == grid)) {
            throw grid_mismatch_error("seed files do not match the requested grid");
        }
        renormalize(u);
        renormalize(v);
        return {u, v};
    }
    }
    throw parameter_error("unknown seed kind");
}

GroundStateSolution solve_ground_state(const SolverConfig& cfg, const Grid2D& grid) {
    cfg.validate();
    auto [u, v] = make_seed(cfg, grid);
    return solve_single(cfg, grid, std::move(u), std::move(v), nullptr);
}

GroundStateSolution solve_from_seed(const SolverConfig& cfg, const Grid2D& grid,
                                    ScalarField u0, ScalarField v0) {
    cfg.validate();
    if (!(u0.grid() == grid) || !(v0.grid() == grid)) {
        throw grid_mismatch_error("seed fields do not match the requested grid");
    }
    renormalize(u0);
    renormalize(v0);
    return solve_single(cfg, grid, std::move(u0), std::move(v0), nullptr);
}

std::vector<GroundStateSolution> continuation_sweep(const SolverConfig& cfg, const Grid2D& grid) {
    cfg.validate();
    std::vector<GroundStateSolution> all;
    all.reserve(cfg.continuation_schedule.size());
    auto [u, v] = make_seed(cfg, grid);
    solve_single(cfg, grid, std::move(u), std::move(v), &all);
    return all;
}

GroundStateSolution solve_best_of_seeds(const SolverConfig& cfg, const Grid2D& grid,
                                        int extra_random_seeds) {
    cfg.validate();
    std::vector<SolverConfig> runs;
    SolverConfig dipole = cfg;
    dipole.seed_kind = SeedKind::dipole_perturbed;
    runs.push_back(dipole);
    for (int k = 0; k < extra_random_seeds; ++k) {
        SolverConfig rnd = cfg;
        rnd.seed_kind = SeedKind::random;
        rnd.rng_seed = cfg.rng_seed + 1 + static_cast<std::uint64_t>(k);
        runs.push_back(rnd);
    }

    std::vector<std::future<GroundStateSolution>> futs;
    futs.reserve(runs.size());
    for (const auto& rc : runs) {
        futs.push_back(std::async(std::launch::async,
                                  [rc, grid] { return solve_ground_state(rc, grid); }));
    }
    std::vector<GroundStateSolution> sols;
    sols.reserve(futs.size());
    for (auto& f : futs) sols.push_back(f.get());

    // converged solutions outrank unconverged ones; ties by earliest seed
    int best = 0;
    for (int i = 1; i < static_cast<int>(sols.size()); ++i) {
        const bool better_class = sols[i].converged && !sols[best].converged;
        const bool same_class = sols[i].converged == sols[best].converged;
        if (better_class || (same_class && sols[i].energy.total < sols[best].energy.total)) {
            best = i;
        }
    }
    return sols[best];
}

} // namespace gpe2
