#include "gpe2/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "gpe2/energy.hpp"
#include "gpe2/kernels.hpp"
#include "gpe2/oracles.hpp"

namespace gpe2 {

SegregationReport segregation_report(const ScalarField& u, const ScalarField& v, double eps) {
    require_same_grid(u, v);
    if (!(eps > 0.0)) throw parameter_error("segregation_report: eps must be positive");

    const Grid2D& g = u.grid();
    const double h2 = g.spacing() * g.spacing();
    SegregationReport rep;
    rep.eps = eps;
    rep.overlap = h2 * kernels::active().cross_sq_sum(u.data(), v.data(), g.size());

    const double* pu = u.data();
    const double* pv = v.data();
    double sup_min = 0, max_v_on_u = 0, max_u_on_v = 0;
    bool u_hit = false, v_hit = false;
    for (std::size_t i = 0; i < g.size(); ++i) {
        sup_min = std::max(sup_min, std::min(pu[i], pv[i]));
        if (pu[i] >= eps) {
            u_hit = true;
            max_v_on_u = std::max(max_v_on_u, pv[i]);
        }
        if (pv[i] >= eps) {
            v_hit = true;
            max_u_on_v = std::max(max_u_on_v, pu[i]);
        }
    }
    rep.sup_min = sup_min;
    rep.u_region_empty = !u_hit;
    rep.v_region_empty = !v_hit;
    rep.max_v_on_U_eps = u_hit ? max_v_on_u : 0.0;
    rep.max_u_on_V_eps = v_hit ? max_u_on_v : 0.0;
    return rep;
}

namespace {

// Zero level set of u - v by marching squares, restricted to cells where at
// least one field is above a relative floor; deep-tail sign noise would
// otherwise spray spurious crossings.
std::vector<std::array<double, 2>> nodal_zero_set(const ScalarField& u, const ScalarField& v) {
    const Grid2D& g = u.grid();
    const int n = g.n;
    const double floor = 1e-6 * std::max(u.max_value(), v.max_value());

    std::vector<std::array<double, 2>> pts;
    auto diff = [&](int i, int j) { return u.at(i, j) - v.at(i, j); };
    auto cross = [](double x0, double y0, double d0, double x1, double y1, double d1) {
        const double t = d0 / (d0 - d1);
        return std::array<double, 2>{x0 + t * (x1 - x0), y0 + t * (y1 - y0)};
    };

    for (int i = 0; i + 1 < n; ++i) {
        for (int j = 0; j + 1 < n; ++j) {
            const double amp = std::max(std::max(u.at(i, j), u.at(i + 1, j + 1)),
                                        std::max(v.at(i, j), v.at(i + 1, j + 1)));
            if (amp < floor) continue;

            const double d00 = diff(i, j), d10 = diff(i + 1, j);
            const double d01 = diff(i, j + 1), d11 = diff(i + 1, j + 1);
            const double x0 = g.coord(i), x1c = g.coord(i + 1);
            const double y0 = g.coord(j), y1c = g.coord(j + 1);

            if (d00 * d10 < 0) pts.push_back(cross(x0, y0, d00, x1c, y0, d10));
            if (d01 * d11 < 0) pts.push_back(cross(x0, y1c, d01, x1c, y1c, d11));
            if (d00 * d01 < 0) pts.push_back(cross(x0, y0, d00, x0, y1c, d01));
            if (d10 * d11 < 0) pts.push_back(cross(x1c, y0, d10, x1c, y1c, d11));
        }
    }
    return pts;
}

} // namespace

SymmetryReport fit_half_plane(const ScalarField& u, const ScalarField& v) {
    require_same_grid(u, v);
    const Grid2D& g = u.grid();
    const double h2 = g.spacing() * g.spacing();

    // first-moment difference of the densities
    double mx = 0, my = 0;
    for (int i = 0; i < g.n; ++i) {
        const double x1 = g.coord(i);
        for (int j = 0; j < g.n; ++j) {
            const double x2 = g.coord(j);
            const double d = u.at(i, j) * u.at(i, j) - v.at(i, j) * v.at(i, j);
            mx += x1 * d;
            my += x2 * d;
        }
    }
    mx *= h2;
    my *= h2;
    const double nrm = std::hypot(mx, my);
    if (nrm < 1e-8) {
        throw direction_undefined_error("moment difference too small to define a dipole axis");
    }

    SymmetryReport rep;
    rep.nu_fit = {mx / nrm, my / nrm};

    const OscillatorEigenfunction dip{OscillatorEigenfunction::Kind::second_dipole, g.omega,
                                      rep.nu_fit};
    ScalarField wp = eval_eigenfunction(dip, g, DipolePart::positive);
    ScalarField wm = eval_eigenfunction(dip, g, DipolePart::negative);

    auto l2_dist = [&](const ScalarField& a, const ScalarField& b) {
        double s = 0;
        const double* pa = a.data();
        const double* pb = b.data();
        for (std::size_t k = 0; k < g.size(); ++k) {
            const double d = pa[k] - pb[k];
            s += d * d;
        }
        return std::sqrt(h2 * s);
    };
    rep.l2_error_u = l2_dist(u, wp);
    rep.l2_error_v = l2_dist(v, wm);

    const auto modes_u = angular_modes(u, 8);
    const auto modes_v = angular_modes(v, 8);
    rep.defect_u = std::clamp(1.0 - modes_u[0], 0.0, 1.0);
    rep.defect_v = std::clamp(1.0 - modes_v[0], 0.0, 1.0);

    rep.nodal_curve = nodal_zero_set(u, v);
    return rep;
}

double nodal_interior_probe(const ScalarField& u, const ScalarField& v, double threshold) {
    require_same_grid(u, v);
    if (!(threshold > 0.0)) throw parameter_error("nodal_interior_probe: threshold must be positive");

    const Grid2D& g = u.grid();
    const int n = g.n;
    const double far = g.half_width - 1.0;

    std::vector<unsigned char> low(g.size(), 0);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (std::max(u.at(i, j), v.at(i, j)) < threshold) {
                low[static_cast<std::size_t>(i) * n + j] = 1;
            }
        }
    }

    // flood-fill components; components reaching |x| > L-1 are tail, not
    // interior nodal holes
    std::vector<int> comp(g.size(), -1);
    int best_count = 0;
    int next_id = 0;
    std::vector<std::size_t> stack;
    for (std::size_t start = 0; start < g.size(); ++start) {
        if (!low[start] || comp[start] >= 0) continue;
        const int id = next_id++;
        int count = 0;
        bool touches_far = false;
        stack.clear();
        stack.push_back(start);
        comp[start] = id;
        while (!stack.empty()) {
            const std::size_t cur = stack.back();
            stack.pop_back();
            const int i = static_cast<int>(cur) / n;
            const int j = static_cast<int>(cur) % n;
            ++count;
            if (std::hypot(g.coord(i), g.coord(j)) > far) touches_far = true;
            const int di[4] = {1, -1, 0, 0};
            const int dj[4] = {0, 0, 1, -1};
            for (int k = 0; k < 4; ++k) {
                const int a = i + di[k], b = j + dj[k];
                if (a < 0 || a >= n || b < 0 || b >= n) continue;
                const std::size_t idx = static_cast<std::size_t>(a) * n + b;
                if (low[idx] && comp[idx] < 0) {
                    comp[idx] = id;
                    stack.push_back(idx);
                }
            }
        }
        if (!touches_far) best_count = std::max(best_count, count);
    }

    const double h = g.spacing();
    return best_count * h * h;
}

double truncation_check(const ScalarField& u) {
    const Grid2D& g = u.grid();
    const int n = g.n;
    double m = 0;
    for (int k = 0; k < n; ++k) {
        for (int ring = 0; ring < 2; ++ring) {
            m = std::max(m, u.at(ring, k));
            m = std::max(m, u.at(n - 1 - ring, k));
            m = std::max(m, u.at(k, ring));
            m = std::max(m, u.at(k, n - 1 - ring));
        }
    }
    return m;
}

} // namespace gpe2
