#include "evlab/kernels.hpp"

#include <cmath>
#include <immintrin.h>

// 4-wide AVX2 variants. Every kernel reproduces the scalar backend bitwise:
// multiplies and adds are separate instructions (no FMA), and reductions keep
// the canonical lane order from kernels.hpp — lane l accumulates elements
// congruent to l mod 4, hsum combines as (a0+a2)+(a1+a3), and the tail is
// folded in sequentially.

namespace evlab::kernels {
namespace {

double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);   // [a0, a1]
    __m128d hi = _mm256_extractf128_pd(v, 1); // [a2, a3]
    lo = _mm_add_pd(lo, hi);                  // [a0+a2, a1+a3]
    __m128d swap = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, swap));
}

double hmin(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_min_pd(lo, hi);
    __m128d swap = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_min_sd(lo, swap));
}

double hmax(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_max_pd(lo, hi);
    __m128d swap = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_max_sd(lo, swap));
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        __m256d vx = _mm256_loadu_pd(x + i);
        _mm256_storeu_pd(y + i, _mm256_add_pd(vy, _mm256_mul_pd(va, vx)));
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d p = _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        acc = _mm256_add_pd(acc, p);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

void scal_avx2(double a, double* x, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    }
    for (; i < n; ++i) x[i] *= a;
}

void row_minmax_scaled_avx2(const double* t, const double* s, std::size_t n,
                            double* mn, double* mx) {
    double lo, hi;
    std::size_t i = 0;
    if (n >= 4) {
        __m256d vlo = _mm256_mul_pd(_mm256_loadu_pd(t), _mm256_loadu_pd(s));
        __m256d vhi = vlo;
        for (i = 4; i + 4 <= n; i += 4) {
            __m256d r = _mm256_mul_pd(_mm256_loadu_pd(t + i), _mm256_loadu_pd(s + i));
            vlo = _mm256_min_pd(vlo, r);
            vhi = _mm256_max_pd(vhi, r);
        }
        lo = hmin(vlo);
        hi = hmax(vhi);
    } else {
        lo = t[0] * s[0];
        hi = lo;
        i = 1;
    }
    for (; i < n; ++i) {
        const double r = t[i] * s[i];
        if (r < lo) lo = r;
        if (r > hi) hi = r;
    }
    *mn = lo;
    *mx = hi;
}

double row_max_abs_scaled_avx2(const double* t, const double* s, std::size_t n) {
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    double hi;
    std::size_t i = 0;
    if (n >= 4) {
        __m256d vhi = _mm256_mul_pd(_mm256_andnot_pd(sign_mask, _mm256_loadu_pd(t)),
                                    _mm256_loadu_pd(s));
        for (i = 4; i + 4 <= n; i += 4) {
            __m256d at = _mm256_andnot_pd(sign_mask, _mm256_loadu_pd(t + i));
            vhi = _mm256_max_pd(vhi, _mm256_mul_pd(at, _mm256_loadu_pd(s + i)));
        }
        hi = hmax(vhi);
    } else {
        hi = std::fabs(t[0]) * s[0];
        i = 1;
    }
    for (; i < n; ++i) {
        const double r = std::fabs(t[i]) * s[i];
        if (r > hi) hi = r;
    }
    return hi;
}

double weighted_abs_sum_avx2(const double* x, const double* w, std::size_t n) {
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d ax = _mm256_andnot_pd(sign_mask, _mm256_loadu_pd(x + i));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(w + i), ax));
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += w[i] * std::fabs(x[i]);
    return s;
}

}  // namespace

bool avx2_supported() {
    return __builtin_cpu_supports("avx2");
}

const Backend avx2_backend = {
    "avx2",
    axpy_avx2,
    dot_avx2,
    scal_avx2,
    row_minmax_scaled_avx2,
    row_max_abs_scaled_avx2,
    weighted_abs_sum_avx2,
};

}  // namespace evlab::kernels
