#pragma once

#include <cstddef>

// Data-parallel inner loops of the solver and energy model.
//
// Every kernel exists in a scalar reference version and, on x86-64 with
// AVX2+FMA, a vectorized version.  The two are equivalence-tested; the
// active set is chosen once at startup (override with GPE2_KERNELS=scalar
// or GPE2_KERNELS=avx2).
//
// Grid kernels take the per-dimension point count n and operate on n*n
// row-major arrays with a homogeneous Dirichlet ring: outputs of stencil
// kernels are written on interior nodes only, the ring stays zero.

namespace gpe2::kernels {

struct Kernels {
    const char* name;

    // sum_i x[i]*y[i]
    double (*dot)(const double* x, const double* y, std::size_t m);
    // y = a*x + b*y
    void (*axpby)(double a, const double* x, double b, double* y, std::size_t m);
    // x *= a
    void (*scale)(double a, double* x, std::size_t m);
    // max_i |x[i]|
    double (*max_abs)(const double* x, std::size_t m);
    // max_i x[i]
    double (*max_val)(const double* x, std::size_t m);

    // y_ij = diag*x_ij + off*(x_{i-1,j}+x_{i+1,j}+x_{i,j-1}+x_{i,j+1}), interior only
    void (*stencil5)(const double* x, double* y, double diag, double off, int n);
    // y_ij = diag_ij*x_ij + off*(neighbor sum), interior only
    void (*helmholtz)(const double* x, double* y, const double* diag, double off, int n);
    // out = -lap(u) + (vsq_i+vsq_j)*u + g1*u^3 + g12*v^2*u, interior only.
    // vsq[k] = omega^2 * x_k^2 holds the separable trap samples.
    void (*gp_operator)(const double* u, const double* v, double* out,
                        const double* vsq, double g1, double g12,
                        double inv_h2, int n);

    // sum over forward differences of (x_{i+1,j}-x_{ij})^2 + (x_{i,j+1}-x_{ij})^2
    double (*grad_sq_sum)(const double* x, int n);
    // sum_ij (vsq_i+vsq_j) * x_ij^2
    double (*trap_sq_sum)(const double* x, const double* vsq, int n);
    // sum_i x[i]^4
    double (*quartic_sum)(const double* x, std::size_t m);
    // sum_i x[i]^2 * y[i]^2
    double (*cross_sq_sum)(const double* x, const double* y, std::size_t m);

    // out = (1 + tau*shift)*u - tau*(g1*u^2 + g12*v^2)*u
    void (*flow_rhs)(const double* u, const double* v, double* out,
                     double g1, double g12, double shift, double tau, std::size_t m);
};

const Kernels& scalar_kernels();

// AVX2+FMA set, or the scalar set when the CPU (or build) lacks support.
const Kernels& avx2_kernels();
bool avx2_supported();

// Startup-selected set used by the rest of the library.
const Kernels& active();

} // namespace gpe2::kernels
