#pragma once

#include <utility>

#include "gpe2/grid.hpp"

namespace gpe2 {

// Repulsive coupling triple plus trap frequency.
struct CouplingParams {
    double g1 = 0.0;
    double g2 = 0.0;
    double g12 = 0.0;
    double omega = 1.0;

    void validate() const; // throws parameter_error
};

struct EnergyBreakdown {
    double kinetic_u = 0, trap_u = 0, quartic_u = 0;
    double kinetic_v = 0, trap_v = 0, quartic_v = 0;
    double interaction = 0;
    double total = 0;
};

struct MultiplierPair {
    double lambda = 0;
    double mu = 0;
};

// Term-by-term energy:
//   kinetic_u = 1/2 int |grad u|^2      trap_u    = 1/2 int V u^2
//   quartic_u = 1/4 g1 int u^4          interaction = 1/2 g12 int u^2 v^2
// and symmetrically for v.  No mass check: scaling tests evaluate off the
// constraint sphere on purpose.
EnergyBreakdown energy_total(const ScalarField& u, const ScalarField& v,
                             const CouplingParams& g);

// Segregated-limit energy: energy_total with the interaction dropped.
// Does not check u*v = 0.
double energy_segregated(const ScalarField& u, const ScalarField& v,
                         double g1, double g2, double omega);

// lambda = int |grad u|^2 + V u^2 + g1 u^4 + g12 u^2 v^2, mu symmetric.
MultiplierPair lagrange_multipliers(const ScalarField& u, const ScalarField& v,
                                    const CouplingParams& g);

// Unconstrained L2 gradient pair:
//   G_u = -lap u + V u + g1 u^3 + g12 v^2 u, symmetric G_v.
std::pair<ScalarField, ScalarField> energy_gradient(const ScalarField& u,
                                                    const ScalarField& v,
                                                    const CouplingParams& g);

enum class ResidualMode {
    full_interior,
    // Drop nodes within 2h of the detected nodal line of u - v; the
    // segregated limit satisfies the equations only inside the supports.
    exclude_nodal_band,
};

// Interior L2 norms of the coupled-system residuals
//   r_u = -lap u + V u + g1 u^3 + g12 v^2 u - lambda u   (r_v symmetric).
std::pair<double, double> gp_residual(const ScalarField& u, const ScalarField& v,
                                      const CouplingParams& g, const MultiplierPair& lm,
                                      ResidualMode mode = ResidualMode::full_interior);

} // namespace gpe2
