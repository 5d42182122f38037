#pragma once

#include <complex>
#include <functional>

#include "evlab/lattice.hpp"

namespace evlab {

// Partial-pivoting factorization P*A = L*U, combined storage.
struct LUFactors {
    int n = 0;
    std::vector<double> lu;  // L strictly below diagonal (unit), U on/above
    std::vector<int> perm;   // row i of P*A is row perm[i] of A
    int parity = 1;
};

LUFactors lu_factor(const DenseMatrix& A);
Vec lu_solve(const LUFactors& f, const Vec& b);
Vec lu_solve_transpose(const LUFactors& f, const Vec& b);
// Solves A*X = B; row-oriented substitution over the rows of B.
DenseMatrix lu_solve_matrix(const LUFactors& f, const DenseMatrix& B);

struct EigenPair {
    double value = 0.0;
    Vec right;  // sup-normalized, max-magnitude entry = +1
    Vec left;   // scaled so <left, right> = 1 (plain dot)
    double residual = 0.0;
};

DenseMatrix identity_matrix(int n);
DenseMatrix matmul(const DenseMatrix& A, const DenseMatrix& B);
Vec matvec(const DenseMatrix& A, const Vec& x);
Vec matvec_transpose(const DenseMatrix& A, const Vec& x);
DenseMatrix transpose(const DenseMatrix& A);
double max_abs(const DenseMatrix& A);

// (mu*I - A)^{-1} with iterative refinement of the inverse.
DenseMatrix resolvent(const DenseMatrix& A, double mu);

// Inverse iteration at the caller-supplied shift; the shift is nudged away
// when it sits exactly on an eigenvalue. Runs two orthogonal starts and
// reports DegenerateEigenvalue when they do not collapse to one direction.
EigenPair eigenpair_near(const DenseMatrix& A, double shift);

// Smallest singular value of (mu*I - A); 0 when the factorization fails.
double sigma_min(const DenseMatrix& A, double mu);

// Distance from lambda0 to the nearest other spectral dip, via sigma_min
// probes at doubling radii plus golden-section refinement. Returns the cap
// 100*(1+|lambda0|) when no other dip is found (conservative for sizing).
double spectral_gap(const DenseMatrix& A, double lambda0);

using Symbol = std::function<std::complex<double>(int)>;

// n x n real matrix of the Fourier multiplier on the uniform grid over [0,1);
// n odd, frequencies k in [-(n-1)/2, (n-1)/2].
DenseMatrix real_dft_multiplier_matrix(int n, const Symbol& symbol);
// Same multiplier applied to a single vector (O(n^2), no matrix build).
Vec apply_fourier_multiplier(const Vec& f, const Symbol& symbol);

// Scaling-and-squaring with the degree-13 Pade core; e^{t*A}.
DenseMatrix matrix_exponential(const DenseMatrix& A, double t);

// Cyclic Jacobi for symmetric S: returns eigenvalues (diagonal order after
// convergence); V's columns are the corresponding eigenvectors.
Vec jacobi_eigen_symmetric(DenseMatrix S, DenseMatrix& V);

}  // namespace evlab
