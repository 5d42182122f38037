#include "evlab/kernels.hpp"

#include <cmath>

namespace evlab::kernels {
namespace {

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

// Reductions follow the canonical lane order (see kernels.hpp): four strided
// accumulators over the 4-aligned prefix, (a0+a2)+(a1+a3), sequential tail.
double dot_scalar(const double* x, const double* y, std::size_t n) {
    double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        a0 += x[i] * y[i];
        a1 += x[i + 1] * y[i + 1];
        a2 += x[i + 2] * y[i + 2];
        a3 += x[i + 3] * y[i + 3];
    }
    double s = (a0 + a2) + (a1 + a3);
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

void scal_scalar(double a, double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void row_minmax_scaled_scalar(const double* t, const double* s, std::size_t n,
                              double* mn, double* mx) {
    double lo = t[0] * s[0];
    double hi = lo;
    for (std::size_t i = 1; i < n; ++i) {
        const double r = t[i] * s[i];
        if (r < lo) lo = r;
        if (r > hi) hi = r;
    }
    *mn = lo;
    *mx = hi;
}

double row_max_abs_scaled_scalar(const double* t, const double* s, std::size_t n) {
    double hi = std::fabs(t[0]) * s[0];
    for (std::size_t i = 1; i < n; ++i) {
        const double r = std::fabs(t[i]) * s[i];
        if (r > hi) hi = r;
    }
    return hi;
}

double weighted_abs_sum_scalar(const double* x, const double* w, std::size_t n) {
    double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        a0 += w[i] * std::fabs(x[i]);
        a1 += w[i + 1] * std::fabs(x[i + 1]);
        a2 += w[i + 2] * std::fabs(x[i + 2]);
        a3 += w[i + 3] * std::fabs(x[i + 3]);
    }
    double s = (a0 + a2) + (a1 + a3);
    for (; i < n; ++i) s += w[i] * std::fabs(x[i]);
    return s;
}

}  // namespace

const Backend scalar_backend = {
    "scalar",
    axpy_scalar,
    dot_scalar,
    scal_scalar,
    row_minmax_scaled_scalar,
    row_max_abs_scaled_scalar,
    weighted_abs_sum_scalar,
};

}  // namespace evlab::kernels
