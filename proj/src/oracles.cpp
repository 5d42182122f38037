#include "evlab/oracles.hpp"

#include <cmath>

#include "evlab/errors.hpp"

namespace evlab {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double simpson(const RealFn& f, double a, double b, int panels) {
    if (a == b) return 0.0;
    const double h = (b - a) / (2.0 * panels);
    double odd = 0.0, even = 0.0;
    for (int k = 1; k < 2 * panels; k += 2) odd += f(a + k * h);
    for (int k = 2; k < 2 * panels; k += 2) even += f(a + k * h);
    return (f(a) + f(b) + 4.0 * odd + 2.0 * even) * h / 3.0;
}

double dirichlet_green(double x, double y) {
    if (!(x > 0.0) || !(x < 1.0) || !(y > 0.0) || !(y < 1.0)) throw OutOfDomain();
    return y <= x ? y * (1.0 - x) : x * (1.0 - y);
}

double thermostat_resolvent_at_zero(const RealFn& f, double x, double beta) {
    if (!(beta > 0.0) || !(beta < 1.0 / kPi)) throw OutOfDomain();
    if (!(x >= 0.0) || !(x <= kPi)) throw OutOfDomain();
    const double inv_beta = 1.0 / beta;
    const double tail =
        simpson([&](double y) { return (inv_beta + x - y) * f(y); }, x, kPi);
    return tail + inv_beta * simpson(f, 0.0, x);
}

double periodic_first_order_resolvent(const RealFn& f, double x, double mu) {
    if (mu == 0.0) throw MuZero();
    auto damped = [&](double y) { return std::exp(-mu * y) * f(y); };
    const double full = simpson(damped, 0.0, 1.0);
    const double head = simpson(damped, 0.0, x);
    const double em = std::exp(mu);
    return std::exp(mu * x) * (em / (em - 1.0) * full - head);
}

double neumann_constant_identity(double mu) {
    if (mu == 0.0) throw MuZero();
    return 1.0 / mu;
}

KernelOracle dirichlet_green_oracle() {
    return {"dirichlet_green",
            [](double x, double y) { return dirichlet_green(x, y); }, 0.0, 0.0, 1.0};
}

}  // namespace evlab
