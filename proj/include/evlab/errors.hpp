#pragma once

#include <stdexcept>
#include <string>

namespace evlab {

// Base for all domain errors raised by the library. The CLI maps these to
// exit code 2 (numeric failure) unless noted otherwise.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid user-facing input (bad parameter, bad edge list, bad suite name).
// CLI maps this to exit code 1 (usage).
struct InvalidParam : Error {
    using Error::Error;
};

struct SingularMatrix : Error {
    SingularMatrix() : Error("matrix is singular to working precision") {}
};

// Resolvent requested at a point inside (or numerically indistinguishable
// from) the spectrum; carries mu.
struct MuInSpectrum : Error {
    double mu;
    explicit MuInSpectrum(double mu_)
        : Error("mu in spectrum: mu = " + std::to_string(mu_)), mu(mu_) {}
};

struct NoConvergence : Error {
    NoConvergence() : Error("iteration did not converge") {}
};

struct DegenerateEigenvalue : Error {
    DegenerateEigenvalue() : Error("eigenvalue is not simple") {}
};

struct NormTooLarge : Error {
    NormTooLarge() : Error("matrix norm exceeds the exponential threshold") {}
};

struct SymbolNotConjugateSymmetric : Error {
    SymbolNotConjugateSymmetric() : Error("symbol is not conjugate-symmetric") {}
};

struct NotSymmetric : Error {
    NotSymmetric() : Error("matrix is not symmetric under the weighted inner product") {}
};

struct NotPositiveDefinite : Error {
    NotPositiveDefinite() : Error("matrix is not positive definite") {}
};

struct DirectionViolated : Error {
    DirectionViolated() : Error("mu list violates the one-sided direction constraint") {}
};

struct PreconditionFailed : Error {
    using Error::Error;
};

struct MuZero : Error {
    MuZero() : Error("mu must be nonzero") {}
};

struct OutOfDomain : Error {
    OutOfDomain() : Error("point outside the operator domain") {}
};

}  // namespace evlab
