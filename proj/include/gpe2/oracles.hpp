#pragma once

#include <array>
#include <utility>
#include <vector>

#include "gpe2/grid.hpp"

namespace gpe2 {

// Closed-form harmonic-oscillator states.
//
//   ground:        phi0(x) = sqrt(omega/pi) exp(-omega |x|^2 / 2), unit mass.
//   second_dipole: w_nu(x) = (2/sqrt(pi)) omega (x.nu) exp(-omega |x|^2 / 2),
//                  total mass 2; each of w+ and w- has unit mass.
struct OscillatorEigenfunction {
    enum class Kind { ground, second_dipole };
    Kind kind = Kind::ground;
    double omega = 1.0;
    std::array<double, 2> nu = {1.0, 0.0}; // dipole axis
};

enum class DipolePart { full_signed, positive, negative };

// Pointwise evaluation on the grid (boundary ring zeroed).  Parts are the
// positive/negative parts of the signed dipole, i.e. the unit-mass
// half-plane states sqrt(2) c_omega (x.nu)^± exp(-omega |x|^2 / 2).
ScalarField eval_eigenfunction(const OscillatorEigenfunction& e, const Grid2D& grid,
                               DipolePart part = DipolePart::full_signed);

// Field in the Gaussian frame, on the square of half-width L/alpha with
// alpha = (2 omega)^(-1/2).  With the same point count the physical box
// maps node-to-node onto the frame box.
struct GaussianFrameField {
    int n = 0;
    double half_width = 0.0;
    double omega = 1.0;
    std::vector<double> values;

    double spacing() const { return 2.0 * half_width / (n - 1); }
    double coord(int k) const { return -half_width + k * spacing(); }
    double& at(int i, int j) { return values[static_cast<std::size_t>(i) * n + j]; }
    double at(int i, int j) const { return values[static_cast<std::size_t>(i) * n + j]; }
};

// u~(x) = sqrt(2 pi) alpha u(alpha x) exp(|x|^2 / 4); preserves the mass:
// the Gaussian-measure mass of u~ equals the Lebesgue mass of u.
GaussianFrameField to_gaussian_frame(const ScalarField& u);

// Gaussian-measure quadratures, weight exp(-|x|^2/2)/(2 pi) at nodes.
double gaussian_mass(const GaussianFrameField& f);
double gaussian_dirichlet(const GaussianFrameField& f);

// F(f) = int |grad f|^2 dmu / int f^2 dmu; degenerate_input_error on a
// zero denominator.
double gaussian_rayleigh(const GaussianFrameField& f);

// Smallest eigenvalue Lambda(H_a) of the Gaussian-weighted Dirichlet
// problem on the half-space {x.nu > a}, via the separated 1D problem on
// [a, a+12] (4000 nodes, second-order stencil, Sturm-sequence bisection).
// Requires a in [-3, 3].
double lambda_halfspace(double a);

// Table of (a, Lambda(H_a)).
std::vector<std::pair<double, double>> lambda_halfspace_table(double from, double to, double step);

} // namespace gpe2
