#pragma once

#include <cstdint>
#include <cmath>
#include <random>

namespace evlab {

// Deterministic double stream. uniform_real_distribution is implementation
// defined, so canonical doubles are built from raw engine output directly.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Uniform in [0, 1) with 53 random bits.
    double canonical() {
        const std::uint64_t bits = eng_() >> 11;
        return std::ldexp(static_cast<double>(bits), -53);
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * canonical(); }

    // Uniform integer in [0, n).
    std::uint64_t index(std::uint64_t n) { return eng_() % n; }

private:
    std::mt19937_64 eng_;
};

}  // namespace evlab
