#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gpe2/energy.hpp"
#include "gpe2/grid.hpp"

namespace gpe2 {

enum class SeedKind {
    symmetric_gaussian, // u0 = v0 = ground Gaussian
    dipole_perturbed,   // ground Gaussian with opposite linear tilts
    random,             // noisy Gaussian envelope, per-component draws
    from_file,
};

struct SolverConfig {
    double time_step = 0.1;     // tau0
    double residual_tol = 1e-6; // tau_r
    double energy_tol = 1e-10;  // tau_E, absolute decrement per step
    int max_iters = 20000;
    SeedKind seed_kind = SeedKind::dipole_perturbed;
    std::uint64_t rng_seed = 1;
    std::vector<CouplingParams> continuation_schedule;
    std::string seed_u_path; // seed_kind = from_file
    std::string seed_v_path;

    void validate() const; // throws parameter_error
};

struct GroundStateSolution {
    ScalarField u, v;
    CouplingParams g;
    EnergyBreakdown energy;
    MultiplierPair multipliers;
    double residual_u = 0, residual_v = 0;
    int iterations = 0;
    bool converged = false;
};

struct FlowStepResult {
    ScalarField u, v;
    int cg_iters_u = 0, cg_iters_v = 0;
};

// One semi-implicit normalized step.  Both components advance from the same
// (u, v) snapshot, so the u<->v symmetry of the map is exact:
//   (I + tau (-lap + V)) u* = u - tau (g1 u^3 + g12 v^2 u - lambda u)
// then u* is renormalized to unit mass (v* symmetric, with mu).  The
// multiplier shift keeps discrete stationary states exact fixed points.
// The linear solve is conjugate gradient at relative tolerance 1e-10.
FlowStepResult flow_step(const ScalarField& u, const ScalarField& v,
                         const CouplingParams& g, double tau);

// Seed fields for a config (unit mass, Dirichlet ring).
std::pair<ScalarField, ScalarField> make_seed(const SolverConfig& cfg, const Grid2D& grid);

// Gradient flow with adaptive tau: halve on an energy increase (step
// rejected), creep back toward tau0 by 1.2x after 50 non-increasing steps.
// Converged when the energy decrement per accepted step <= energy_tol and
// both residuals <= residual_tol.  With a multi-entry schedule each
// converged pair warm-starts the next coupling triple; the result is the
// final entry's solution.
GroundStateSolution solve_ground_state(const SolverConfig& cfg, const Grid2D& grid);

// As solve_ground_state, but starting from caller-provided fields
// (renormalized); ignores cfg.seed_kind.
GroundStateSolution solve_from_seed(const SolverConfig& cfg, const Grid2D& grid,
                                    ScalarField u0, ScalarField v0);

// All schedule entries in order, warm-started; per-entry convergence flags
// report each entry's own exit condition and failures do not abort the rest.
std::vector<GroundStateSolution> continuation_sweep(const SolverConfig& cfg, const Grid2D& grid);

// Headline policy: dipole seed plus `extra_random_seeds` random seeds
// (rng streams derived from cfg.rng_seed), lowest final energy wins.
// Independent solves run concurrently; the selection is deterministic.
GroundStateSolution solve_best_of_seeds(const SolverConfig& cfg, const Grid2D& grid,
                                        int extra_random_seeds = 3);

} // namespace gpe2
