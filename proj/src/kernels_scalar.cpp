#include "gpe2/kernels.hpp"

#include <cmath>

// Reference kernels.  Reductions run four interleaved accumulators so the
// rounding behavior stays close to the vector versions and the error
// constant of long sums stays small.

namespace gpe2::kernels {
namespace {

double dot_scalar(const double* x, const double* y, std::size_t m) {
    double s0 = 0, s1 = 0, s2 = 0, s3 = 0;
    std::size_t i = 0;
    for (; i + 4 <= m; i += 4) {
        s0 += x[i] * y[i];
        s1 += x[i + 1] * y[i + 1];
        s2 += x[i + 2] * y[i + 2];
        s3 += x[i + 3] * y[i + 3];
    }
    for (; i < m; ++i) s0 += x[i] * y[i];
    return (s0 + s1) + (s2 + s3);
}

void axpby_scalar(double a, const double* x, double b, double* y, std::size_t m) {
    for (std::size_t i = 0; i < m; ++i) y[i] = a * x[i] + b * y[i];
}

void scale_scalar(double a, double* x, std::size_t m) {
    for (std::size_t i = 0; i < m; ++i) x[i] *= a;
}

double max_abs_scalar(const double* x, std::size_t m) {
    double r = 0;
    for (std::size_t i = 0; i < m; ++i) r = std::max(r, std::fabs(x[i]));
    return r;
}

double max_val_scalar(const double* x, std::size_t m) {
    if (m == 0) return 0;
    double r = x[0];
    for (std::size_t i = 1; i < m; ++i) r = std::max(r, x[i]);
    return r;
}

void stencil5_scalar(const double* x, double* y, double diag, double off, int n) {
    for (int i = 1; i < n - 1; ++i) {
        const double* row = x + static_cast<std::size_t>(i) * n;
        const double* up = row - n;
        const double* dn = row + n;
        double* out = y + static_cast<std::size_t>(i) * n;
        for (int j = 1; j < n - 1; ++j) {
            out[j] = diag * row[j] + off * (up[j] + dn[j] + row[j - 1] + row[j + 1]);
        }
    }
}

void helmholtz_scalar(const double* x, double* y, const double* diag, double off, int n) {
    for (int i = 1; i < n - 1; ++i) {
        const std::size_t base = static_cast<std::size_t>(i) * n;
        const double* row = x + base;
        const double* up = row - n;
        const double* dn = row + n;
        const double* d = diag + base;
        double* out = y + base;
        for (int j = 1; j < n - 1; ++j) {
            out[j] = d[j] * row[j] + off * (up[j] + dn[j] + row[j - 1] + row[j + 1]);
        }
    }
}

void gp_operator_scalar(const double* u, const double* v, double* out,
                        const double* vsq, double g1, double g12,
                        double inv_h2, int n) {
    for (int i = 1; i < n - 1; ++i) {
        const std::size_t base = static_cast<std::size_t>(i) * n;
        const double* row = u + base;
        const double* up = row - n;
        const double* dn = row + n;
        const double* vr = v + base;
        double* o = out + base;
        const double vi = vsq[i];
        for (int j = 1; j < n - 1; ++j) {
            const double uc = row[j];
            const double lap = (up[j] + dn[j] + row[j - 1] + row[j + 1] - 4.0 * uc) * inv_h2;
            const double pot = vi + vsq[j] + g1 * uc * uc + g12 * vr[j] * vr[j];
            o[j] = -lap + pot * uc;
        }
    }
}

double grad_sq_sum_scalar(const double* x, int n) {
    double s0 = 0, s1 = 0;
    for (int i = 0; i < n; ++i) {
        const double* row = x + static_cast<std::size_t>(i) * n;
        if (i + 1 < n) {
            const double* dn = row + n;
            for (int j = 0; j < n; ++j) {
                const double d = dn[j] - row[j];
                s0 += d * d;
            }
        }
        for (int j = 0; j + 1 < n; ++j) {
            const double d = row[j + 1] - row[j];
            s1 += d * d;
        }
    }
    return s0 + s1;
}

double trap_sq_sum_scalar(const double* x, const double* vsq, int n) {
    double s = 0;
    for (int i = 0; i < n; ++i) {
        const double* row = x + static_cast<std::size_t>(i) * n;
        const double vi = vsq[i];
        double r0 = 0, r1 = 0;
        for (int j = 0; j < n; ++j) {
            const double xx = row[j] * row[j];
            r0 += vi * xx;
            r1 += vsq[j] * xx;
        }
        s += r0 + r1;
    }
    return s;
}

double quartic_sum_scalar(const double* x, std::size_t m) {
    double s0 = 0, s1 = 0;
    std::size_t i = 0;
    for (; i + 2 <= m; i += 2) {
        const double a = x[i] * x[i];
        const double b = x[i + 1] * x[i + 1];
        s0 += a * a;
        s1 += b * b;
    }
    for (; i < m; ++i) {
        const double a = x[i] * x[i];
        s0 += a * a;
    }
    return s0 + s1;
}

double cross_sq_sum_scalar(const double* x, const double* y, std::size_t m) {
    double s0 = 0, s1 = 0;
    std::size_t i = 0;
    for (; i + 2 <= m; i += 2) {
        const double a = x[i] * y[i];
        const double b = x[i + 1] * y[i + 1];
        s0 += a * a;
        s1 += b * b;
    }
    for (; i < m; ++i) {
        const double a = x[i] * y[i];
        s0 += a * a;
    }
    return s0 + s1;
}

void flow_rhs_scalar(const double* u, const double* v, double* out,
                     double g1, double g12, double shift, double tau, std::size_t m) {
    const double c = 1.0 + tau * shift;
    for (std::size_t i = 0; i < m; ++i) {
        const double uc = u[i];
        out[i] = (c - tau * (g1 * uc * uc + g12 * v[i] * v[i])) * uc;
    }
}

} // namespace

const Kernels& scalar_kernels() {
    static const Kernels k = {
        "scalar",
        dot_scalar,
        axpby_scalar,
        scale_scalar,
        max_abs_scalar,
        max_val_scalar,
        stencil5_scalar,
        helmholtz_scalar,
        gp_operator_scalar,
        grad_sq_sum_scalar,
        trap_sq_sum_scalar,
        quartic_sum_scalar,
        cross_sq_sum_scalar,
        flow_rhs_scalar,
    };
    return k;
}

} // namespace gpe2::kernels
