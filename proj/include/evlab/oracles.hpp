#pragma once

#include <functional>
#include <string>

// Closed-form resolvent formulas used as independent references for
// discretization convergence and margin spot-checks. All quadrature is
// fixed-order composite Simpson with 10^4 panels: deterministic, and its
// error is far below the discretization error being measured.

namespace evlab {

using RealFn = std::function<double(double)>;

double simpson(const RealFn& f, double a, double b, int panels = 10000);

// Kernel of R(0) for the Dirichlet Laplacian on (0,1):
// y(1-x) for y <= x, x(1-y) otherwise. x, y in (0,1).
double dirichlet_green(double x, double y);

// R(0)f(x) for the thermostat operator on (0,pi):
// int_x^pi (1/beta + x - y) f(y) dy + (1/beta) int_0^x f(y) dy.
// beta in (0, 1/pi); x in [0, pi].
double thermostat_resolvent_at_zero(const RealFn& f, double x, double beta);

// R(mu)f(x) for the first-order derivative with periodic conditions on [0,1):
// e^{mu x} ( e^mu/(e^mu - 1) int_0^1 e^{-mu y} f - int_0^x e^{-mu y} f ).
double periodic_first_order_resolvent(const RealFn& f, double x, double mu);

// 1/mu; asserts R(mu)*1 = (1/mu)*1 for every operator annihilating constants.
double neumann_constant_identity(double mu);

struct KernelOracle {
    std::string name;
    std::function<double(double, double)> kernel;
    double mu = 0.0;
    double domain_lo = 0.0;
    double domain_hi = 1.0;
};

KernelOracle dirichlet_green_oracle();

}  // namespace evlab
