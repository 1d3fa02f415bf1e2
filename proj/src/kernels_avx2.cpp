#include "gpe2/kernels.hpp"

// AVX2+FMA kernels.  This translation unit is compiled with -mavx2 -mfma;
// nothing here runs unless the runtime check in avx2_supported() passes.

#if defined(__x86_64__) || defined(_M_X64)
#define GPE2_HAVE_AVX2_BUILD 1
#else
#define GPE2_HAVE_AVX2_BUILD 0
#endif

#if GPE2_HAVE_AVX2_BUILD

#include <immintrin.h>

#include <cmath>

namespace gpe2::kernels {
namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

double dot_avx2(const double* x, const double* y, std::size_t m) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= m; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
    }
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < m; ++i) s += x[i] * y[i];
    return s;
}

void axpby_avx2(double a, const double* x, double b, double* y, std::size_t m) {
    const __m256d va = _mm256_set1_pd(a);
    const __m256d vb = _mm256_set1_pd(b);
    std::size_t i = 0;
    for (; i + 4 <= m; i += 4) {
        __m256d t = _mm256_mul_pd(vb, _mm256_loadu_pd(y + i));
        t = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), t);
        _mm256_storeu_pd(y + i, t);
    }
    for (; i < m; ++i) y[i] = a * x[i] + b * y[i];
}

void scale_avx2(double a, double* x, std::size_t m) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= m; i += 4) {
        _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    }
    for (; i < m; ++i) x[i] *= a;
}

double max_abs_avx2(const double* x, std::size_t m) {
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    __m256d vmax = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= m; i += 4) {
        __m256d v = _mm256_andnot_pd(sign_mask, _mm256_loadu_pd(x + i));
        vmax = _mm256_max_pd(vmax, v);
    }
    double buf[4];
    _mm256_storeu_pd(buf, vmax);
    double r = std::max(std::max(buf[0], buf[1]), std::max(buf[2], buf[3]));
    for (; i < m; ++i) r = std::max(r, std::fabs(x[i]));
    return r;
}

double max_val_avx2(const double* x, std::size_t m) {
    if (m == 0) return 0;
    __m256d vmax = _mm256_set1_pd(x[0]);
    std::size_t i = 0;
    for (; i + 4 <= m; i += 4) {
        vmax = _mm256_max_pd(vmax, _mm256_loadu_pd(x + i));
    }
    double buf[4];
    _mm256_storeu_pd(buf, vmax);
    double r = std::max(std::max(buf[0], buf[1]), std::max(buf[2], buf[3]));
    for (; i < m; ++i) r = std::max(r, x[i]);
    return r;
}

void stencil5_avx2(const double* x, double* y, double diag, double off, int n) {
    const __m256d vd = _mm256_set1_pd(diag);
    const __m256d vo = _mm256_set1_pd(off);
    for (int i = 1; i < n - 1; ++i) {
        const double* row = x + static_cast<std::size_t>(i) * n;
        const double* up = row - n;
        const double* dn = row + n;
        double* out = y + static_cast<std::size_t>(i) * n;
        int j = 1;
        for (; j + 4 <= n - 1; j += 4) {
            __m256d nb = _mm256_add_pd(_mm256_loadu_pd(up + j), _mm256_loadu_pd(dn + j));
            nb = _mm256_add_pd(nb, _mm256_add_pd(_mm256_loadu_pd(row + j - 1),
                                                 _mm256_loadu_pd(row + j + 1)));
            __m256d r = _mm256_mul_pd(vo, nb);
            r = _mm256_fmadd_pd(vd, _mm256_loadu_pd(row + j), r);
            _mm256_storeu_pd(out + j, r);
        }
        for (; j < n - 1; ++j) {
            out[j] = diag * row[j] + off * (up[j] + dn[j] + row[j - 1] + row[j + 1]);
        }
    }
}

void helmholtz_avx2(const double* x, double* y, const double* diag, double off, int n) {
    const __m256d vo = _mm256_set1_pd(off);
    for (int i = 1; i < n - 1; ++i) {
        const std::size_t base = static_cast<std::size_t>(i) * n;
        const double* row = x + base;
        const double* up = row - n;
        const double* dn = row + n;
        const double* d = diag + base;
        double* out = y + base;
        int j = 1;
        for (; j + 4 <= n - 1; j += 4) {
            __m256d nb = _mm256_add_pd(_mm256_loadu_pd(up + j), _mm256_loadu_pd(dn + j));
            nb = _mm256_add_pd(nb, _mm256_add_pd(_mm256_loadu_pd(row + j - 1),
                                                 _mm256_loadu_pd(row + j + 1)));
            __m256d r = _mm256_mul_pd(vo, nb);
            r = _mm256_fmadd_pd(_mm256_loadu_pd(d + j), _mm256_loadu_pd(row + j), r);
            _mm256_storeu_pd(out + j, r);
        }
        for (; j < n - 1; ++j) {
            out[j] = d[j] * row[j] + off * (up[j] + dn[j] + row[j - 1] + row[j + 1]);
        }
    }
}

void gp_operator_avx2(const double* u, const double* v, double* out,
                      const double* vsq, double g1, double g12,
                      double inv_h2, int n) {
    const __m256d vinv = _mm256_set1_pd(inv_h2);
    const __m256d vfour = _mm256_set1_pd(4.0);
    const __m256d vg1 = _mm256_set1_pd(g1);
    const __m256d vg12 = _mm256_set1_pd(g12);
    for (int i = 1; i < n - 1; ++i) {
        const std::size_t base = static_cast<std::size_t>(i) * n;
        const double* row = u + base;
        const double* up = row - n;
        const double* dn = row + n;
        const double* vr = v + base;
        double* o = out + base;
        const __m256d vvi = _mm256_set1_pd(vsq[i]);
        int j = 1;
        for (; j + 4 <= n - 1; j += 4) {
            const __m256d uc = _mm256_loadu_pd(row + j);
            __m256d nb = _mm256_add_pd(_mm256_loadu_pd(up + j), _mm256_loadu_pd(dn + j));
            nb = _mm256_add_pd(nb, _mm256_add_pd(_mm256_loadu_pd(row + j - 1),
                                                 _mm256_loadu_pd(row + j + 1)));
            // lap = (nb - 4 u) * inv_h2
            __m256d lap = _mm256_mul_pd(_mm256_fnmadd_pd(vfour, uc, nb), vinv);
            const __m256d vc = _mm256_loadu_pd(vr + j);
            __m256d pot = _mm256_add_pd(vvi, _mm256_loadu_pd(vsq + j));
            pot = _mm256_fmadd_pd(vg1, _mm256_mul_pd(uc, uc), pot);
            pot = _mm256_fmadd_pd(vg12, _mm256_mul_pd(vc, vc), pot);
            _mm256_storeu_pd(o + j, _mm256_fmsub_pd(pot, uc, lap));
        }
        for (; j < n - 1; ++j) {
            const double uc = row[j];
            const double lap = (up[j] + dn[j] + row[j - 1] + row[j + 1] - 4.0 * uc) * inv_h2;
            const double pot = vsq[i] + vsq[j] + g1 * uc * uc + g12 * vr[j] * vr[j];
            o[j] = pot * uc - lap;
        }
    }
}

double grad_sq_sum_avx2(const double* x, int n) {
    __m256d acc = _mm256_setzero_pd();
    double tail = 0;
    for (int i = 0; i < n; ++i) {
        const double* row = x + static_cast<std::size_t>(i) * n;
        if (i + 1 < n) {
            const double* dn = row + n;
            int j = 0;
            for (; j + 4 <= n; j += 4) {
                __m256d d = _mm256_sub_pd(_mm256_loadu_pd(dn + j), _mm256_loadu_pd(row + j));
                acc = _mm256_fmadd_pd(d, d, acc);
            }
            for (; j < n; ++j) {
                const double d = dn[j] - row[j];
                tail += d * d;
            }
        }
        int j = 0;
        for (; j + 4 <= n - 1; j += 4) {
            __m256d d = _mm256_sub_pd(_mm256_loadu_pd(row + j + 1), _mm256_loadu_pd(row + j));
            acc = _mm256_fmadd_pd(d, d, acc);
        }
        for (; j < n - 1; ++j) {
            const double d = row[j + 1] - row[j];
            tail += d * d;
        }
    }
    return hsum(acc) + tail;
}

double trap_sq_sum_avx2(const double* x, const double* vsq, int n) {
    __m256d acc = _mm256_setzero_pd();
    double tail = 0;
    for (int i = 0; i < n; ++i) {
        const double* row = x + static_cast<std::size_t>(i) * n;
        const __m256d vvi = _mm256_set1_pd(vsq[i]);
        int j = 0;
        for (; j + 4 <= n; j += 4) {
            const __m256d xc = _mm256_loadu_pd(row + j);
            const __m256d xx = _mm256_mul_pd(xc, xc);
            const __m256d w = _mm256_add_pd(vvi, _mm256_loadu_pd(vsq + j));
            acc = _mm256_fmadd_pd(w, xx, acc);
        }
        for (; j < n; ++j) {
            tail += (vsq[i] + vsq[j]) * row[j] * row[j];
        }
    }
    return hsum(acc) + tail;
}

double quartic_sum_avx2(const double* x, std::size_t m) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= m; i += 4) {
        const __m256d v = _mm256_loadu_pd(x + i);
        const __m256d sq = _mm256_mul_pd(v, v);
        acc = _mm256_fmadd_pd(sq, sq, acc);
    }
    double s = hsum(acc);
    for (; i < m; ++i) {
        const double a = x[i] * x[i];
        s += a * a;
    }
    return s;
}

double cross_sq_sum_avx2(const double* x, const double* y, std::size_t m) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= m; i += 4) {
        const __m256d p = _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        acc = _mm256_fmadd_pd(p, p, acc);
    }
    double s = hsum(acc);
    for (; i < m; ++i) {
        const double a = x[i] * y[i];
        s += a * a;
    }
    return s;
}

void flow_rhs_avx2(const double* u, const double* v, double* out,
                   double g1, double g12, double shift, double tau, std::size_t m) {
    const double c = 1.0 + tau * shift;
    const __m256d vc = _mm256_set1_pd(c);
    const __m256d vt = _mm256_set1_pd(tau);
    const __m256d vg1 = _mm256_set1_pd(g1);
    const __m256d vg12 = _mm256_set1_pd(g12);
    std::size_t i = 0;
    for (; i + 4 <= m; i += 4) {
        const __m256d uc = _mm256_loadu_pd(u + i);
        const __m256d vv = _mm256_loadu_pd(v + i);
        __m256d nl = _mm256_mul_pd(vg1, _mm256_mul_pd(uc, uc));
        nl = _mm256_fmadd_pd(vg12, _mm256_mul_pd(vv, vv), nl);
        const __m256d f = _mm256_fnmadd_pd(vt, nl, vc); // c - tau*nl
        _mm256_storeu_pd(out + i, _mm256_mul_pd(f, uc));
    }
    for (; i < m; ++i) {
        const double uc = u[i];
        out[i] = (c - tau * (g1 * uc * uc + g12 * v[i] * v[i])) * uc;
    }
}

} // namespace

const Kernels& avx2_kernels_impl() {
    static const Kernels k = {
        "avx2",
        dot_avx2,
        axpby_avx2,
        scale_avx2,
        max_abs_avx2,
        max_val_avx2,
        stencil5_avx2,
        helmholtz_avx2,
        gp_operator_avx2,
        grad_sq_sum_avx2,
        trap_sq_sum_avx2,
        quartic_sum_avx2,
        cross_sq_sum_avx2,
        flow_rhs_avx2,
    };
    return k;
}

} // namespace gpe2::kernels

#else

namespace gpe2::kernels {

const Kernels& avx2_kernels_impl() { return scalar_kernels(); }

} // namespace gpe2::kernels

#endif
