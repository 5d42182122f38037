#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace evlab {

using Vec = std::vector<double>;

// Dense square matrix, row-major.
struct DenseMatrix {
    int n = 0;
    std::vector<double> a;  // n*n entries

    DenseMatrix() = default;
    explicit DenseMatrix(int size) : n(size), a(static_cast<size_t>(size) * size, 0.0) {}

    double* row(int i) { return a.data() + static_cast<size_t>(i) * n; }
    const double* row(int i) const { return a.data() + static_cast<size_t>(i) * n; }
    double& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    double at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
};

// Comparison frame: strictly positive u, phi, quadrature weights, equal length.
// Discrete duality: <phi, f> = sum_j weights[j] * phi[j] * f[j].
struct RankOneFrame {
    Vec u;
    Vec phi;
    Vec weights;

    void validate() const;  // throws InvalidParam on violation
    int size() const { return static_cast<int>(u.size()); }
};

// Entrywise ratios r_ij = T_ij / (u_i * phi_j * w_j).
// T >= c*(u x phi) iff lower_margin >= c; T <= -(u x phi) iff upper_margin < 0.
struct MarginReport {
    double lower_margin = 0.0;
    double upper_margin = 0.0;
    double two_sided_constant = 0.0;  // max(|lower|, |upper|); minimal c-hat
    std::pair<int, int> argmin_index{-1, -1};
    std::pair<int, int> argmax_index{-1, -1};
};

// (u x phi) as a matrix: M_ij = u_i * phi_j * w_j, so M f = <phi,f> u.
DenseMatrix rank_one_matrix(const RankOneFrame& frame);

MarginReport margins(const DenseMatrix& T, const RankOneFrame& frame);

// Operator norm of T : (R^n, ||.||_phi) -> (R^n, ||.||_u).
// Closed form max_ij |T_ij|/(u_i phi_j w_j); equals two_sided_constant but
// computed through an independent reduction (see margins).
double phi_to_u_norm(const DenseMatrix& T, const RankOneFrame& frame);

// ||x||_u = max_i |x_i| / u_i.
double gauge_norm(const Vec& x, const Vec& u);

// ||x||_phi = sum_j w_j * phi_j * |x_j|.
double al_norm(const Vec& x, const RankOneFrame& frame);

// Max absolute row sum (sup -> sup operator norm).
double sup_op_norm(const DenseMatrix& A);

// Max over columns j of (sum_k w_k phi_k |A_kj|) / (w_j phi_j):
// operator norm on the AL side, used by the constructive extension bounds.
double al_op_norm(const DenseMatrix& A, const RankOneFrame& frame);

// ||u||_sup * sum_j w_j phi_j: norm of the embedding E_u -> E^phi.
double frame_ku(const RankOneFrame& frame);

double sup_norm(const Vec& x);

}  // namespace evlab
