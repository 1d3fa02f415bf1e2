#pragma once

#include <array>
#include <vector>

#include "gpe2/grid.hpp"

namespace gpe2 {

struct SegregationReport {
    double overlap = 0;         // int u^2 v^2
    double sup_min = 0;         // max over nodes of min(u, v)
    double eps = 0;
    double max_v_on_U_eps = 0;  // max of v where u >= eps
    double max_u_on_V_eps = 0;  // max of u where v >= eps
    bool u_region_empty = false;
    bool v_region_empty = false;
};

SegregationReport segregation_report(const ScalarField& u, const ScalarField& v, double eps);

struct SymmetryReport {
    double defect_u = 0; // 1 - mode-0 angular weight
    double defect_v = 0;
    std::array<double, 2> nu_fit = {1.0, 0.0};
    double l2_error_u = 0; // against sqrt(2) w+ along nu_fit
    double l2_error_v = 0;
    std::vector<std::array<double, 2>> nodal_curve; // zero set of u - v
};

// Fits the dipole axis from the first-moment difference of u^2 and v^2,
// compares against the half-plane closed forms, and extracts the nodal
// curve of u - v by marching squares.  Throws direction_undefined_error
// when the moment difference is below 1e-8.
SymmetryReport fit_half_plane(const ScalarField& u, const ScalarField& v);

// Area (node count times h^2) of the largest connected below-threshold
// component of max(u, v), ignoring components that reach into the far
// field |x| > L - 1 where both fields are legitimately tiny.
double nodal_interior_probe(const ScalarField& u, const ScalarField& v, double threshold);

// Max of the field on the outermost interior ring; values above 1e-6
// indicate an undersized box.
double truncation_check(const ScalarField& u);

} // namespace gpe2
