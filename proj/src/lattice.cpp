#include "evlab/lattice.hpp"

#include <cmath>
#include <cstddef>

#include "evlab/errors.hpp"
#include "evlab/kernels.hpp"

namespace evlab {

void RankOneFrame::validate() const {
    const size_t n = u.size();
    if (n == 0) throw InvalidParam("frame is empty");
    if (phi.size() != n || weights.size() != n)
        throw InvalidParam("frame vectors have mismatched lengths");
    for (size_t i = 0; i < n; ++i) {
        if (!(u[i] > 0.0) || !std::isfinite(u[i])) throw InvalidParam("u must be strictly positive");
        if (!(phi[i] > 0.0) || !std::isfinite(phi[i]))
            throw InvalidParam("phi must be strictly positive");
        if (!(weights[i] > 0.0) || !std::isfinite(weights[i]))
            throw InvalidParam("weights must be strictly positive");
    }
}

DenseMatrix rank_one_matrix(const RankOneFrame& frame) {
    frame.validate();
    const int n = frame.size();
    DenseMatrix m(n);
    for (int i = 0; i < n; ++i) {
        double* r = m.row(i);
        for (int j = 0; j < n; ++j) r[j] = frame.u[i] * frame.phi[j] * frame.weights[j];
    }
    return m;
}

MarginReport margins(const DenseMatrix& T, const RankOneFrame& frame) {
    frame.validate();
    const int n = frame.size();
    if (T.n != n) throw InvalidParam("matrix/frame dimension mismatch");

    Vec invcol(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) invcol[j] = 1.0 / (frame.phi[j] * frame.weights[j]);

    MarginReport rep;
    double lo = 0.0, hi = 0.0;
    int lo_row = -1, hi_row = -1;
    for (int i = 0; i < n; ++i) {
        double rmn, rmx;
        kernels::row_minmax_scaled(T.row(i), invcol.data(), static_cast<size_t>(n), rmn, rmx);
        const double inv_u = 1.0 / frame.u[i];
        rmn *= inv_u;
        rmx *= inv_u;
        if (i == 0 || rmn < lo) { lo = rmn; lo_row = i; }
        if (i == 0 || rmx > hi) { hi = rmx; hi_row = i; }
    }
    rep.lower_margin = lo;
    rep.upper_margin = hi;
    rep.two_sided_constant = std::max(std::fabs(lo), std::fabs(hi));

    // Column recovery on the two winning rows only.
    auto find_col = [&](int i, double target) {
        const double* r = T.row(i);
        const double inv_u = 1.0 / frame.u[i];
        int best = 0;
        double best_gap = -1.0;
        for (int j = 0; j < n; ++j) {
            const double gap = std::fabs(r[j] * invcol[j] * inv_u - target);
            if (best_gap < 0.0 || gap < best_gap) { best_gap = gap; best = j; }
        }
        return best;
    };
    rep.argmin_index = {lo_row, find_col(lo_row, lo)};
    rep.argmax_index = {hi_row, find_col(hi_row, hi)};
    return rep;
}

double phi_to_u_norm(const DenseMatrix& T, const RankOneFrame& frame) {
    frame.validate();
    const int n = frame.size();
    if (T.n != n) throw InvalidParam("matrix/frame dimension mismatch");

    Vec invcol(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) invcol[j] = 1.0 / (frame.phi[j] * frame.weights[j]);

    double best = 0.0;
    for (int i = 0; i < n; ++i) {
        const double rmax =
            kernels::row_max_abs_scaled(T.row(i), invcol.data(), static_cast<size_t>(n));
        const double v = rmax / frame.u[i];
        if (v > best) best = v;
    }
    return best;
}

double gauge_norm(const Vec& x, const Vec& u) {
    if (x.size() != u.size()) throw InvalidParam("gauge_norm length mismatch");
    double best = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        const double v = std::fabs(x[i]) / u[i];
        if (v > best) best = v;
    }
    return best;
}

double al_norm(const Vec& x, const RankOneFrame& frame) {
    if (x.size() != frame.phi.size()) throw InvalidParam("al_norm length mismatch");
    double s = 0.0;
    for (size_t j = 0; j < x.size(); ++j) s += frame.weights[j] * frame.phi[j] * std::fabs(x[j]);
    return s;
}

double sup_op_norm(const DenseMatrix& A) {
    double best = 0.0;
    for (int i = 0; i < A.n; ++i) {
        const double* r = A.row(i);
        double s = 0.0;
        for (int j = 0; j < A.n; ++j) s += std::fabs(r[j]);
        if (s > best) best = s;
    }
    return best;
}

double al_op_norm(const DenseMatrix& A, const RankOneFrame& frame) {
    const int n = frame.size();
    if (A.n != n) throw InvalidParam("matrix/frame dimension mismatch");
    double best = 0.0;
    for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int k = 0; k < n; ++k) s += frame.weights[k] * frame.phi[k] * std::fabs(A.at(k, j));
        const double v = s / (frame.weights[j] * frame.phi[j]);
        if (v > best) best = v;
    }
    return best;
}

double frame_ku(const RankOneFrame& frame) {
    double usup = 0.0, wphi = 0.0;
    for (size_t i = 0; i < frame.u.size(); ++i) {
        if (frame.u[i] > usup) usup = frame.u[i];
        wphi += frame.weights[i] * frame.phi[i];
    }
    return usup * wphi;
}

double sup_norm(const Vec& x) {
    double best = 0.0;
    for (double v : x) {
        const double a = std::fabs(v);
        if (a > best) best = a;
    }
    return best;
}

}  // namespace evlab
