#include "evlab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>

#include "evlab/errors.hpp"
#include "evlab/kernels.hpp"

namespace evlab {

namespace {

double dot2(const Vec& a, const Vec& b) {
    return kernels::dot(a.data(), b.data(), a.size());
}

double norm2(const Vec& a) { return std::sqrt(dot2(a, a)); }

int argmax_abs(const Vec& v) {
    int best = 0;
    double mag = -1.0;
    for (size_t i = 0; i < v.size(); ++i) {
        const double a = std::fabs(v[i]);
        if (a > mag) { mag = a; best = static_cast<int>(i); }
    }
    return best;
}

}  // namespace

LUFactors lu_factor(const DenseMatrix& A) {
    const int n = A.n;
    LUFactors f;
    f.n = n;
    f.lu = A.a;
    f.perm.resize(n);
    for (int i = 0; i < n; ++i) f.perm[i] = i;

    // Singularity threshold is relative to the original column magnitudes.
    Vec colmax(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) colmax[j] = std::max(colmax[j], std::fabs(A.at(i, j)));

    auto lu = [&](int i, int j) -> double& { return f.lu[static_cast<size_t>(i) * n + j]; };
    for (int k = 0; k < n; ++k) {
        int p = k;
        double best = std::fabs(lu(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double a = std::fabs(lu(i, k));
            if (a > best) { best = a; p = i; }
        }
        if (colmax[k] == 0.0 || best < 1e-13 * colmax[k]) throw SingularMatrix();
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(lu(k, j), lu(p, j));
            std::swap(f.perm[k], f.perm[p]);
            f.parity = -f.parity;
        }
        const double inv_piv = 1.0 / lu(k, k);
        for (int i = k + 1; i < n; ++i) {
            const double m = lu(i, k) * inv_piv;
            lu(i, k) = m;
            if (m != 0.0)
                kernels::axpy(-m, &f.lu[static_cast<size_t>(k) * n + k + 1],
                              &f.lu[static_cast<size_t>(i) * n + k + 1],
                              static_cast<size_t>(n - k - 1));
        }
    }
    return f;
}

Vec lu_solve(const LUFactors& f, const Vec& b) {
    const int n = f.n;
    Vec x(n);
    for (int i = 0; i < n; ++i) x[i] = b[f.perm[i]];
    const auto lu = [&](int i, int j) { return f.lu[static_cast<size_t>(i) * n + j]; };
    for (int i = 1; i < n; ++i) {
        double s = x[i];
        for (int k = 0; k < i; ++k) s -= lu(i, k) * x[k];
        x[i] = s;
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = x[i];
        for (int k = i + 1; k < n; ++k) s -= lu(i, k) * x[k];
        x[i] = s / lu(i, i);
    }
    return x;
}

Vec lu_solve_transpose(const LUFactors& f, const Vec& b) {
    const int n = f.n;
    const auto lu = [&](int i, int j) { return f.lu[static_cast<size_t>(i) * n + j]; };
    // A^T = U^T L^T P: forward with U^T, backward with L^T, then unpermute.
    Vec y(n);
    for (int i = 0; i < n; ++i) {
        double s = b[i];
        for (int k = 0; k < i; ++k) s -= lu(k, i) * y[k];
        y[i] = s / lu(i, i);
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = y[i];
        for (int k = i + 1; k < n; ++k) s -= lu(k, i) * y[k];
        y[i] = s;
    }
    Vec x(n);
    for (int i = 0; i < n; ++i) x[f.perm[i]] = y[i];
    return x;
}

DenseMatrix lu_solve_matrix(const LUFactors& f, const DenseMatrix& B) {
    const int n = f.n;
    DenseMatrix X(n);
    for (int i = 0; i < n; ++i) {
        const double* src = B.row(f.perm[i]);
        std::copy(src, src + n, X.row(i));
    }
    const auto lu = [&](int i, int j) { return f.lu[static_cast<size_t>(i) * n + j]; };
    for (int i = 1; i < n; ++i)
        for (int k = 0; k < i; ++k) {
            const double m = lu(i, k);
            if (m != 0.0) kernels::axpy(-m, X.row(k), X.row(i), static_cast<size_t>(n));
        }
    for (int i = n - 1; i >= 0; --i) {
        for (int k = i + 1; k < n; ++k) {
            const double m = lu(i, k);
            if (m != 0.0) kernels::axpy(-m, X.row(k), X.row(i), static_cast<size_t>(n));
        }
        kernels::scal(1.0 / lu(i, i), X.row(i), static_cast<size_t>(n));
    }
    return X;
}

DenseMatrix identity_matrix(int n) {
    DenseMatrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

DenseMatrix matmul(const DenseMatrix& A, const DenseMatrix& B) {
    if (A.n != B.n) throw InvalidParam("matmul dimension mismatch");
    const int n = A.n;
    DenseMatrix C(n);
    for (int i = 0; i < n; ++i) {
        const double* arow = A.row(i);
        double* crow = C.row(i);
        for (int k = 0; k < n; ++k)
            if (arow[k] != 0.0) kernels::axpy(arow[k], B.row(k), crow, static_cast<size_t>(n));
    }
    return C;
}

Vec matvec(const DenseMatrix& A, const Vec& x) {
    Vec y(A.n);
    for (int i = 0; i < A.n; ++i) y[i] = kernels::dot(A.row(i), x.data(), x.size());
    return y;
}

Vec matvec_transpose(const DenseMatrix& A, const Vec& x) {
    Vec y(A.n, 0.0);
    for (int i = 0; i < A.n; ++i)
        if (x[i] != 0.0) kernels::axpy(x[i], A.row(i), y.data(), y.size());
    return y;
}

DenseMatrix transpose(const DenseMatrix& A) {
    DenseMatrix T(A.n);
    for (int i = 0; i < A.n; ++i)
        for (int j = 0; j < A.n; ++j) T.at(j, i) = A.at(i, j);
    return T;
}

double max_abs(const DenseMatrix& A) {
    double best = 0.0;
    for (double v : A.a) best = std::max(best, std::fabs(v));
    return best;
}

DenseMatrix resolvent(const DenseMatrix& A, double mu) {
    const int n = A.n;
    DenseMatrix M(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M.at(i, j) = (i == j ? mu : 0.0) - A.at(i, j);
    LUFactors f;
    try {
        f = lu_factor(M);
    } catch (const SingularMatrix&) {
        throw MuInSpectrum(mu);
    }
    DenseMatrix X = lu_solve_matrix(f, identity_matrix(n));

    // Iterative refinement of the inverse: keeps ill-conditioned resolvents
    // (mu close to spectrum, stiff operators) near working precision.
    auto residual = [&](const DenseMatrix& Y) {
        DenseMatrix E = matmul(M, Y);
        for (int i = 0; i < n; ++i) E.at(i, i) -= 1.0;
        return E;
    };
    DenseMatrix E = residual(X);
    double best_res = max_abs(E);
    DenseMatrix best = X;
    const double floor_res = 2e-16 * n * max_abs(M) * std::max(1.0, max_abs(X));
    for (int step = 0; step < 5 && best_res > floor_res; ++step) {
        DenseMatrix D = lu_solve_matrix(f, E);
        for (size_t i = 0; i < X.a.size(); ++i) X.a[i] -= D.a[i];
        E = residual(X);
        const double r = max_abs(E);
        if (r < best_res) {
            best_res = r;
            best = X;
        } else {
            break;
        }
    }
    return best;
}

namespace {

// One inverse-iteration run; returns sup-normalized vector (pivot entry +1).
Vec inverse_iterate(const DenseMatrix& A, const LUFactors& f, double anorm, Vec v,
                    bool transpose_solve, double* value_out, double* residual_out) {
    const int n = A.n;
    const int idx0 = argmax_abs(v);
    const double v0 = v[idx0];
    for (auto& x : v) x /= v0;
    double lambda = 0.0, res = 1.0;
    for (int it = 0; it < 500; ++it) {
        Vec w = transpose_solve ? lu_solve_transpose(f, v) : lu_solve(f, v);
        const int idx = argmax_abs(w);
        const double piv = w[idx];
        if (piv == 0.0 || !std::isfinite(piv)) throw NoConvergence();
        for (auto& x : w) x /= piv;
        Vec aw = transpose_solve ? matvec_transpose(A, w) : matvec(A, w);
        lambda = dot2(w, aw) / dot2(w, w);
        double r = 0.0;
        for (int i = 0; i < n; ++i) r = std::max(r, std::fabs(aw[i] - lambda * w[i]));
        res = r / anorm;
        v = std::move(w);
        // A norm-relative stop can accept the very first iterate of a
        // huge-norm operator while it still carries percent-level
        // contamination; two extra sweeps decay it below the solver's
        // backward-error floor before the value is trusted.
        if (res <= 1e-8 && it >= 2) {
            *value_out = lambda;
            *residual_out = res;
            return v;
        }
    }
    throw NoConvergence();
}

}  // namespace

EigenPair eigenpair_near(const DenseMatrix& A, double shift) {
    const int n = A.n;
    const double anorm = std::max(sup_op_norm(A), 1e-300);
    const double nudge_base = (1.0 + std::fabs(shift) + 1e-6 * anorm) * 1e-8;

    for (int attempt = 0; attempt <= 6; ++attempt) {
        const double s = shift + (attempt == 0 ? 0.0 : nudge_base * std::pow(4.0, attempt - 1));
        DenseMatrix M(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) M.at(i, j) = A.at(i, j) - (i == j ? s : 0.0);
        LUFactors f;
        try {
            f = lu_factor(M);
        } catch (const SingularMatrix&) {
            continue;  // shift sits on an eigenvalue; nudge and retry
        }

        Vec start1(n, 1.0), start2(n);
        for (int i = 0; i < n; ++i) start2[i] = std::sin(2.0 * M_PI * (i + 0.5) / n);
        double val1 = 0.0, val2 = 0.0, res1 = 0.0, res2 = 0.0;
        Vec v1, v2;
        try {
            v1 = inverse_iterate(A, f, anorm, start1, false, &val1, &res1);
            v2 = inverse_iterate(A, f, anorm, start2, false, &val2, &res2);
        } catch (const NoConvergence&) {
            if (attempt == 6) throw;
            continue;
        }
        const double cosang = std::fabs(dot2(v1, v2)) / (norm2(v1) * norm2(v2));
        if (cosang < 0.999) {
            // Two directions. Judge "same eigenvalue" at the candidates' own
            // scale: a shared simple value needs both Rayleigh quotients and
            // the action magnitudes ||A v|| to agree. A real vector rotating
            // inside a conjugate-pair block of a huge-norm operator also has
            // Rayleigh quotient near 0, but its action is the pair modulus,
            // so the action test rejects it at any global norm.
            auto action = [&](const Vec& v) {
                const Vec av = matvec(A, v);
                double m = 0.0, s = 0.0;
                for (int i = 0; i < n; ++i) {
                    m = std::max(m, std::fabs(av[i]));
                    s = std::max(s, std::fabs(v[i]));
                }
                return m / s;
            };
            double m1 = action(v1), m2 = action(v2);
            auto same_value = [](double va, double vb, double ma, double mb) {
                const double tol = 1e-6 * (1.0 + std::fabs(va) + std::fabs(vb) + ma + mb);
                return std::fabs(va - vb) <= tol && std::fabs(ma - mb) <= tol;
            };
            if (same_value(val1, val2, m1, m2)) throw DegenerateEigenvalue();
            // One start was deficient and converged elsewhere (or only
            // sloppily). Keep the run nearest the shift and probe for a
            // second direction at its value with a deflated start.
            if (std::fabs(val2 - shift) < std::fabs(val1 - shift)) {
                v1.swap(v2);
                std::swap(val1, val2);
                std::swap(res1, res2);
                std::swap(m1, m2);
            }
            Vec probe(n);
            std::uint64_t state = 0x9e3779b97f4a7c15ull;
            for (int i = 0; i < n; ++i) {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                probe[i] = static_cast<double>(state >> 11) * 0x1.0p-53 - 0.5;
            }
            const double proj = dot2(probe, v1) / dot2(v1, v1);
            for (int i = 0; i < n; ++i) probe[i] -= proj * v1[i];
            double val3 = 0.0, res3 = 0.0;
            Vec v3;
            bool probe_converged = true;
            try {
                v3 = inverse_iterate(A, f, anorm, probe, false, &val3, &res3);
            } catch (const NoConvergence&) {
                // A second direction at val1 would converge at least as easily
                // as the first run did; a stalled probe is not degeneracy.
                probe_converged = false;
            }
            if (probe_converged) {
                const double cos3 = std::fabs(dot2(v1, v3)) / (norm2(v1) * norm2(v3));
                if (cos3 < 0.999 && same_value(val1, val3, m1, action(v3)))
                    throw DegenerateEigenvalue();
            }
        }

        double lval = 0.0, lres = 0.0;
        Vec left;
        try {
            left = inverse_iterate(A, f, anorm, start1, true, &lval, &lres);
        } catch (const NoConvergence&) {
            if (attempt == 6) throw;
            continue;
        }

        EigenPair pair;
        pair.right = v1;
        const int idx = argmax_abs(pair.right);
        const double piv = pair.right[idx];
        for (auto& x : pair.right) x /= piv;

        // Two-sided Rayleigh quotient: insensitive to both residuals.
        const double denom = dot2(left, pair.right);
        if (denom == 0.0 || !std::isfinite(denom)) throw NoConvergence();
        pair.value = dot2(left, matvec(A, pair.right)) / denom;
        pair.left = left;
        const double scale = 1.0 / denom;
        for (auto& x : pair.left) x *= scale;

        Vec ar = matvec(A, pair.right);
        double r = 0.0;
        for (int i = 0; i < n; ++i) r = std::max(r, std::fabs(ar[i] - pair.value * pair.right[i]));
        pair.residual = r / anorm;
        return pair;
    }
    throw NoConvergence();
}

double sigma_min(const DenseMatrix& A, double mu) {
    const int n = A.n;
    DenseMatrix M(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M.at(i, j) = (i == j ? mu : 0.0) - A.at(i, j);
    LUFactors f;
    try {
        f = lu_factor(M);
    } catch (const SingularMatrix&) {
        return 0.0;
    }
    // Power iteration on (M^T M)^{-1}; dominant eigenvalue is 1/sigma_min^2.
    Vec z(n);
    for (int i = 0; i < n; ++i) z[i] = 1.0 + 0.5 * std::sin(3.7 * i + 0.3);
    double rho = 0.0;
    for (int it = 0; it < 12; ++it) {
        const double zn = norm2(z);
        for (auto& x : z) x /= zn;
        Vec w = lu_solve_transpose(f, z);
        Vec y = lu_solve(f, w);
        rho = dot2(z, y);
        if (!std::isfinite(rho) || rho <= 0.0) return 0.0;
        z = std::move(y);
    }
    return 1.0 / std::sqrt(rho);
}

double spectral_gap(const DenseMatrix& A, double lambda0) {
    const double cap = 100.0 * (1.0 + std::fabs(lambda0));
    const double r0 = 1e-3 * (1.0 + std::fabs(lambda0));
    double best = cap;
    for (const double dir : {1.0, -1.0}) {
        double rprev = 0.0;
        for (double r = r0; r <= cap; r *= 2.0) {
            const double s = sigma_min(A, lambda0 + dir * r);
            if (s < 0.5 * r) {
                // Another dip inside [r-s, r+s]; golden-section refine.
                double lo = std::max(rprev, 0.5 * r);
                double hi = std::min(cap, r + s + 0.05 * r);
                const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
                double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
                double f1 = sigma_min(A, lambda0 + dir * x1);
                double f2 = sigma_min(A, lambda0 + dir * x2);
                for (int it = 0; it < 48; ++it) {
                    if (f1 <= f2) {
                        hi = x2;
                        x2 = x1;
                        f2 = f1;
                        x1 = hi - gr * (hi - lo);
                        f1 = sigma_min(A, lambda0 + dir * x1);
                    } else {
                        lo = x1;
                        x1 = x2;
                        f1 = f2;
                        x2 = lo + gr * (hi - lo);
                        f2 = sigma_min(A, lambda0 + dir * x2);
                    }
                }
                best = std::min(best, 0.5 * (lo + hi));
                break;
            }
            rprev = r;
        }
    }
    return best;
}

DenseMatrix real_dft_multiplier_matrix(int n, const Symbol& symbol) {
    if (n < 1 || n % 2 == 0) throw InvalidParam("multiplier grid size must be odd");
    const int K = (n - 1) / 2;
    double scale = 0.0;
    for (int k = -K; k <= K; ++k) {
        const auto sk = symbol(k);
        const auto smk = symbol(-k);
        if (std::abs(smk - std::conj(sk)) > 1e-12 * (1.0 + std::abs(sk)))
            throw SymbolNotConjugateSymmetric();
        scale = std::max(scale, std::abs(sk));
    }

    DenseMatrix M(n);
    const double w = 2.0 * M_PI / n;
    for (int j = 0; j < n; ++j) {
        // DFT of e_j is k -> e^{-i w k j}; multiply and transform back.
        for (int m = 0; m < n; ++m) {
            std::complex<double> g = 0.0;
            for (int k = -K; k <= K; ++k)
                g += symbol(k) * std::polar(1.0, w * k * (m - j));
            g /= static_cast<double>(n);
            if (std::fabs(g.imag()) > 1e-9 * (1.0 + scale)) throw SymbolNotConjugateSymmetric();
            M.at(m, j) = g.real();
        }
    }
    return M;
}

Vec apply_fourier_multiplier(const Vec& f, const Symbol& symbol) {
    const int n = static_cast<int>(f.size());
    if (n < 1 || n % 2 == 0) throw InvalidParam("multiplier grid size must be odd");
    const int K = (n - 1) / 2;
    const double w = 2.0 * M_PI / n;
    double fnorm = 0.0;
    for (double x : f) fnorm = std::max(fnorm, std::fabs(x));

    std::vector<std::complex<double>> fhat(2 * K + 1);
    double scale = 0.0;
    for (int k = -K; k <= K; ++k) {
        std::complex<double> s = 0.0;
        for (int m = 0; m < n; ++m) s += f[m] * std::polar(1.0, -w * k * m);
        const auto sym = symbol(k);
        scale = std::max(scale, std::abs(sym));
        fhat[k + K] = sym * s;
    }
    Vec g(n);
    for (int m = 0; m < n; ++m) {
        std::complex<double> s = 0.0;
        for (int k = -K; k <= K; ++k) s += fhat[k + K] * std::polar(1.0, w * k * m);
        s /= static_cast<double>(n);
        if (std::fabs(s.imag()) > 1e-9 * (1.0 + scale) * (1.0 + fnorm))
            throw SymbolNotConjugateSymmetric();
        g[m] = s.real();
    }
    return g;
}

DenseMatrix matrix_exponential(const DenseMatrix& A, double t) {
    const int n = A.n;
    DenseMatrix B(n);
    for (size_t i = 0; i < B.a.size(); ++i) B.a[i] = t * A.a[i];
    const double nrm = sup_op_norm(B);
    if (!(nrm <= 1e4)) throw NormTooLarge();

    const double theta13 = 5.371920351148152;
    int squarings = 0;
    if (nrm > theta13) {
        squarings = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
        const double sc = std::ldexp(1.0, -squarings);
        for (auto& v : B.a) v *= sc;
    }

    static const double b[14] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                 1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                 670442572800.0,      33522128640.0,       1323241920.0,
                                 40840800.0,          960960.0,            16380.0,
                                 182.0,               1.0};

    const DenseMatrix I = identity_matrix(n);
    const DenseMatrix B2 = matmul(B, B);
    const DenseMatrix B4 = matmul(B2, B2);
    const DenseMatrix B6 = matmul(B2, B4);

    auto lincomb = [&](double c6, const DenseMatrix& M6, double c4, const DenseMatrix& M4,
                       double c2, const DenseMatrix& M2, double c0, const DenseMatrix& M0) {
        DenseMatrix R(n);
        for (size_t i = 0; i < R.a.size(); ++i)
            R.a[i] = c6 * M6.a[i] + c4 * M4.a[i] + c2 * M2.a[i] + c0 * M0.a[i];
        return R;
    };

    DenseMatrix W1 = lincomb(b[13], B6, b[11], B4, b[9], B2, 0.0, I);
    DenseMatrix W = matmul(B6, W1);
    for (size_t i = 0; i < W.a.size(); ++i)
        W.a[i] += b[7] * B6.a[i] + b[5] * B4.a[i] + b[3] * B2.a[i] + b[1] * I.a[i];
    const DenseMatrix U = matmul(B, W);

    DenseMatrix Z1 = lincomb(b[12], B6, b[10], B4, b[8], B2, 0.0, I);
    DenseMatrix V = matmul(B6, Z1);
    for (size_t i = 0; i < V.a.size(); ++i)
        V.a[i] += b[6] * B6.a[i] + b[4] * B4.a[i] + b[2] * B2.a[i] + b[0] * I.a[i];

    DenseMatrix P(n), Q(n);
    for (size_t i = 0; i < P.a.size(); ++i) {
        P.a[i] = V.a[i] + U.a[i];
        Q.a[i] = V.a[i] - U.a[i];
    }
    DenseMatrix X = lu_solve_matrix(lu_factor(Q), P);
    for (int s = 0; s < squarings; ++s) X = matmul(X, X);
    return X;
}

Vec jacobi_eigen_symmetric(DenseMatrix S, DenseMatrix& V) {
    const int n = S.n;
    V = identity_matrix(n);
    double fro = 0.0;
    for (double v : S.a) fro += v * v;
    fro = std::sqrt(fro);
    if (fro == 0.0) return Vec(n, 0.0);

    for (int sweep = 0; sweep < 30; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += 2.0 * S.at(p, q) * S.at(p, q);
        if (std::sqrt(off) <= 1e-13 * fro) {
            Vec vals(n);
            for (int i = 0; i < n; ++i) vals[i] = S.at(i, i);
            return vals;
        }
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                const double apq = S.at(p, q);
                if (std::fabs(apq) <= 1e-300) continue;
                const double tau = (S.at(q, q) - S.at(p, p)) / (2.0 * apq);
                const double tsign = (tau >= 0.0) ? 1.0 : -1.0;
                const double tt = tsign / (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + tt * tt);
                const double s = tt * c;
                for (int k = 0; k < n; ++k) {
                    const double skp = S.at(k, p), skq = S.at(k, q);
                    S.at(k, p) = c * skp - s * skq;
                    S.at(k, q) = s * skp + c * skq;
                }
                for (int k = 0; k < n; ++k) {
                    const double spk = S.at(p, k), sqk = S.at(q, k);
                    S.at(p, k) = c * spk - s * sqk;
                    S.at(q, k) = s * spk + c * sqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = V.at(k, p), vkq = V.at(k, q);
                    V.at(k, p) = c * vkp - s * vkq;
                    V.at(k, q) = s * vkp + c * vkq;
                }
            }
    }
    throw NoConvergence();
}

}  // namespace evlab
