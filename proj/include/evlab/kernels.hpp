#pragma once

#include <cstddef>

// Hot inner loops used by the dense linear algebra and the margin scans.
// A scalar reference implementation always exists; an AVX2 variant is
// selected at runtime when the CPU supports it. Selection can be overridden
// with EVLAB_KERNELS={scalar,avx2} or force_backend() (test hook).
//
// Rounding contract: every kernel is bitwise identical across backends.
// No kernel uses FMA; multiplies and adds round separately. Reductions
// (dot, weighted_abs_sum) follow one canonical order: four strided
// accumulators over the 4-aligned prefix (lane l sums elements with index
// congruent to l mod 4), combined as (a0+a2)+(a1+a3), then the tail folded
// in sequentially. Downstream results therefore never depend on the
// selected backend.

namespace evlab::kernels {

struct Backend {
    const char* name;
    // y[i] += a * x[i]
    void (*axpy)(double a, const double* x, double* y, std::size_t n);
    double (*dot)(const double* x, const double* y, std::size_t n);
    // x[i] *= a
    void (*scal)(double a, double* x, std::size_t n);
    // min/max over t[i] * s[i]; n >= 1
    void (*row_minmax_scaled)(const double* t, const double* s, std::size_t n,
                              double* mn, double* mx);
    // max over |t[i]| * s[i]; s >= 0; n >= 1
    double (*row_max_abs_scaled)(const double* t, const double* s, std::size_t n);
    // sum over w[i] * |x[i]|
    double (*weighted_abs_sum)(const double* x, const double* w, std::size_t n);
};

extern const Backend scalar_backend;
#if defined(EVLAB_HAVE_AVX2)
extern const Backend avx2_backend;
bool avx2_supported();
#endif

const Backend& active();
// name = "scalar" | "avx2" | nullptr to restore auto-selection.
void force_backend(const char* name);
const char* backend_name();

inline void axpy(double a, const double* x, double* y, std::size_t n) {
    active().axpy(a, x, y, n);
}
inline double dot(const double* x, const double* y, std::size_t n) {
    return active().dot(x, y, n);
}
inline void scal(double a, double* x, std::size_t n) { active().scal(a, x, n); }
inline void row_minmax_scaled(const double* t, const double* s, std::size_t n,
                              double& mn, double& mx) {
    active().row_minmax_scaled(t, s, n, &mn, &mx);
}
inline double row_max_abs_scaled(const double* t, const double* s, std::size_t n) {
    return active().row_max_abs_scaled(t, s, n);
}
inline double weighted_abs_sum(const double* x, const double* w, std::size_t n) {
    return active().weighted_abs_sum(x, w, n);
}

}  // namespace evlab::kernels
