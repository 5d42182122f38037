#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "evlab/errors.hpp"
#include "evlab/gallery.hpp"
#include "evlab/lattice.hpp"
#include "evlab/numerics.hpp"

using namespace evlab;

namespace {

constexpr double kPi = 3.14159265358979323846;

double worst_row_sum(const DenseMatrix& A) {
    Vec r = matvec(A, Vec(A.n, 1.0));
    double w = 0.0;
    for (double x : r) w = std::max(w, std::fabs(x));
    return w;
}

double weighted_asymmetry(const DenseMatrix& A, const Vec& w) {
    double worst = 0.0, scale = 0.0;
    for (int i = 0; i < A.n; ++i)
        for (int j = 0; j < A.n; ++j) {
            const double wa = w[i] * A.at(i, j);
            worst = std::max(worst, std::fabs(wa - A.at(j, i) * w[j]));
            scale = std::max(scale, std::fabs(wa));
        }
    return worst / scale;
}

double sup_diff(const Vec& a, const Vec& b) {
    double d = 0.0;
    for (size_t i = 0; i < a.size(); ++i) d = std::max(d, std::fabs(a[i] - b[i]));
    return d;
}

}  // namespace

TEST_CASE("dirichlet stencil at n=3 is the scaled tridiagonal") {
    auto op = build_interval_laplacian(IntervalBc::dirichlet, 3);
    const double want[3][3] = {{-32, 16, 0}, {16, -32, 16}, {0, 16, -32}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(op.matrix.at(i, j) == want[i][j]);
    CHECK(op.grid.h[0] == 0.25);
    CHECK(op.lambda0 == doctest::Approx(-kPi * kPi));
    for (double u : op.frame.u) CHECK(u > 0.0);
    CHECK(op.frame.weights[0] == 0.25);
}

TEST_CASE("neumann and periodic rows annihilate constants exactly") {
    for (auto bc : {IntervalBc::neumann, IntervalBc::periodic}) {
        auto op = build_interval_laplacian(bc, 200);
        CHECK(worst_row_sum(op.matrix) == 0.0);
        CHECK(op.lambda0 == 0.0);
    }
    auto nm = build_interval_laplacian(IntervalBc::neumann, 10);
    CHECK(nm.frame.weights.front() == doctest::Approx(0.5 / 9));
    CHECK(nm.frame.weights[1] == doctest::Approx(1.0 / 9));
}

TEST_CASE("builders reject invalid sizes and parameters") {
    CHECK_THROWS_AS(build_interval_laplacian(IntervalBc::dirichlet, 2), InvalidParam);
    CHECK_THROWS_AS(build_odd_order(1, 32), InvalidParam);   // even n
    CHECK_THROWS_AS(build_odd_order(2, 7), InvalidParam);    // below 2(ell+2)+1
    CHECK_THROWS_AS(build_odd_order(-1, 31), InvalidParam);
    CHECK_THROWS_AS(build_delay_operator(0.0, 64), InvalidParam);
    CHECK_THROWS_AS(build_delay_operator(1.0, 63), InvalidParam);  // odd n
    CHECK_THROWS_AS(build_delay_operator(1.0, 8), InvalidParam);
    CHECK_THROWS_AS(build_graph_laplacian({{0, 1, -1.0}}, 16), InvalidParam);
    CHECK_THROWS_AS(build_graph_laplacian({{0, 1, 1.0}, {2, 3, 1.0}}, 16), InvalidParam);
    CHECK_THROWS_AS(build_graph_laplacian({}, 16), InvalidParam);
    CHECK_THROWS_AS(make_named_operator("thermostat", 200, {{"beta", 0.5}}, {}), InvalidParam);
    CHECK_THROWS_AS(make_named_operator("robin", 200, {}, {}), InvalidParam);
}

TEST_CASE("dirichlet sine residual decays at second order") {
    auto res = [](int n) {
        auto op = build_interval_laplacian(IntervalBc::dirichlet, n);
        Vec au = matvec(op.matrix, op.frame.u);
        double r = 0.0;
        for (int i = 0; i < n; ++i)
            r = std::max(r, std::fabs(au[i] - op.lambda0 * op.frame.u[i]));
        return r;
    };
    const double r1 = res(99), r2 = res(199);  // h exactly halves
    CHECK(r2 > 0.0);
    CHECK(r1 / r2 > 3.4);
    CHECK(r1 / r2 < 4.6);
}

TEST_CASE("symmetric builders are self-adjoint under the weights") {
    std::vector<GalleryOperator> ops;
    ops.push_back(build_interval_laplacian(IntervalBc::dirichlet, 60));
    ops.push_back(build_interval_laplacian(IntervalBc::neumann, 60));
    ops.push_back(build_interval_laplacian(IntervalBc::periodic, 60));
    ops.push_back(build_nonlocal_laplacian({1, 1, 1, 1}, 0.0, 1.0, 60));
    ops.push_back(build_graph_laplacian({{0, 1, 1.0}, {0, 2, 1.5}, {0, 3, 2.0}}, 16));
    for (const auto& op : ops) {
        INFO(op.name);
        CHECK(weighted_asymmetry(op.matrix, op.frame.weights) <= 1e-10);
    }
}

TEST_CASE("nonlocal with zero coupling is the neumann operator") {
    auto nl = build_nonlocal_laplacian({0, 0, 0, 0}, 0.0, 1.0, 40);
    auto nm = build_interval_laplacian(IntervalBc::neumann, 40);
    for (int i = 0; i < 40; ++i)
        for (int j = 0; j < 40; ++j) CHECK(nl.matrix.at(i, j) == nm.matrix.at(i, j));
    CHECK(worst_row_sum(nl.matrix) == 0.0);
}

TEST_CASE("single unit edge graph equals the neumann operator up to indexing") {
    auto g = build_graph_laplacian({{0, 1, 1.0}}, 9);
    auto nm = build_interval_laplacian(IntervalBc::neumann, 10);
    auto perm = [](int gi) { return gi == 0 ? 0 : (gi == 1 ? 9 : gi - 1); };
    REQUIRE(g.grid.n == 10);
    for (int i = 0; i < 10; ++i) {
        CHECK(g.frame.weights[i] == nm.frame.weights[perm(i)]);
        for (int j = 0; j < 10; ++j)
            CHECK(g.matrix.at(i, j) == nm.matrix.at(perm(i), perm(j)));
    }
}

TEST_CASE("two half edges between two vertices carry the circle spectrum") {
    auto circle = build_graph_laplacian({{0, 1, 0.5}, {0, 1, 0.5}}, 32);
    const double gap = spectral_gap(circle.matrix, 0.0);
    CHECK(std::fabs(gap - 4 * kPi * kPi) <= 0.05 * 4 * kPi * kPi);
}

TEST_CASE("three-star conserves constants and has a simple zero eigenvalue") {
    auto star = build_graph_laplacian({{0, 1, 1.0}, {0, 2, 1.5}, {0, 3, 2.0}}, 32);
    CHECK(star.grid.n == 145);
    CHECK(worst_row_sum(star.matrix) == 0.0);
    auto pr = eigenpair_near(star.matrix, 0.0);
    CHECK(std::fabs(pr.value) <= 1e-10);
    CHECK(pr.residual <= 1e-10);
    for (double v : pr.right) CHECK(v > 0.0);
    for (double v : pr.left) CHECK(v > 0.0);
}

TEST_CASE("interval spectral gaps match the continuum") {
    auto nm = build_interval_laplacian(IntervalBc::neumann, 200);
    auto pd = build_interval_laplacian(IntervalBc::periodic, 200);
    CHECK(std::fabs(spectral_gap(nm.matrix, 0.0) - kPi * kPi) <= 0.05 * kPi * kPi);
    CHECK(std::fabs(spectral_gap(pd.matrix, 0.0) - 4 * kPi * kPi) <= 0.05 * 4 * kPi * kPi);
}

TEST_CASE("odd-order matrix matches the fourier multiplier route") {
    for (int ell : {0, 1}) {
        auto op = build_odd_order(ell, 31);
        auto direct = real_dft_multiplier_matrix(31, odd_order_symbol(ell));
        double d = 0.0;
        for (size_t t = 0; t < op.matrix.a.size(); ++t)
            d = std::max(d, std::fabs(op.matrix.a[t] - direct.a[t]));
        CHECK(d <= 1e-9 * max_abs(op.matrix));
    }
}

TEST_CASE("odd-order rows annihilate constants exactly for every ell") {
    for (int ell : {0, 1, 2}) {
        auto op = build_odd_order(ell, ell < 2 ? 31 : 63);
        INFO("ell=" << ell);
        CHECK(worst_row_sum(op.matrix) == 0.0);
    }
}

TEST_CASE("odd-order matrix is antisymmetric") {
    auto op = build_odd_order(0, 31);
    double d = 0.0;
    for (int i = 0; i < 31; ++i)
        for (int j = 0; j < 31; ++j)
            d = std::max(d, std::fabs(op.matrix.at(i, j) + op.matrix.at(j, i)));
    CHECK(d <= 1e-12 * max_abs(op.matrix));
}

TEST_CASE("first-order exponential shifts a node function one step") {
    auto op = build_odd_order(0, 31);
    auto E = matrix_exponential(op.matrix, 1.0 / 31);
    Vec ej(31, 0.0);
    ej[5] = 1.0;
    Vec y = matvec(E, ej);
    Symbol sym = [shift = odd_order_symbol(0)](int k) { return std::exp(shift(k) / 31.0); };
    CHECK(sup_diff(y, apply_fourier_multiplier(ej, sym)) <= 1e-8);
    Vec shifted(31, 0.0);
    shifted[4] = 1.0;  // generator of translation: values flow down-index
    CHECK(sup_diff(y, shifted) <= 1e-8);
}

TEST_CASE("delay operator structure: transport rows, x-row, frame") {
    const double c = kPi / 16.0;
    auto op = build_delay_operator(c, 64);
    const int n = 64;
    const double h = 2.0 / n;
    REQUIRE(op.grid.n == n + 1);
    CHECK(worst_row_sum(op.matrix) == 0.0);
    // x-row: +-c*(h/2+1) at the ends, +-c*h inside, 0 at the midpoint.
    CHECK(op.matrix.at(n, 0) == doctest::Approx(c * (0.5 * h + 1.0)));
    CHECK(op.matrix.at(n, n / 2) == 0.0);
    CHECK(op.matrix.at(n, 1) == doctest::Approx(c * h));
    CHECK(op.matrix.at(n, n - 1) == doctest::Approx(-c * h));
    CHECK(std::fabs(op.matrix.at(n, 0) + op.matrix.at(n, n)) <= 1e-12 * c);
    // upwind transport row
    CHECK(op.matrix.at(3, 3) == doctest::Approx(-1.5 / h));
    CHECK(op.matrix.at(3, 4) == doctest::Approx(2.0 / h));
    CHECK(op.matrix.at(3, 5) == doctest::Approx(-0.5 / h));
    CHECK(op.frame.weights[0] == doctest::Approx(0.5 * c * h));
    CHECK(op.frame.weights[n] == doctest::Approx(1.0 + 0.5 * c * h));
    CHECK(op.continuum_m2 == 0);
}

TEST_CASE("delay left profile is the analytic tent and decays first order") {
    auto left_residual = [](int n) {
        auto op = build_delay_operator(kPi / 16.0, n);
        Vec psi(n + 1);
        for (int j = 0; j <= n; ++j) {
            const double s = -2.0 + j * (2.0 / n);
            const double v = s <= -1.0 ? 3.0 + s : 1.0 - s;
            psi[j] = op.frame.weights[j] * v;
        }
        const double rel =
            sup_norm(matvec_transpose(op.matrix, psi)) / sup_op_norm(op.matrix);
        return std::make_pair(op, rel);
    };
    auto [op64, r64] = left_residual(64);
    auto [op128, r128] = left_residual(128);
    CHECK(r128 > 0.0);
    // The upwind closure is not summation-by-parts: the raw defect stays O(1)
    // at the coupling columns, so the operator-relative residual decays first
    // order, not second.
    CHECK(r64 / r128 > 1.6);
    CHECK(r64 / r128 < 2.6);
    // eigensolver left vector lines up with the tent profile
    auto pr = eigenpair_near(op64.matrix, 0.0);
    Vec psi(65);
    for (int j = 0; j <= 64; ++j) {
        const double s = -2.0 + j * (2.0 / 64);
        psi[j] = op64.frame.weights[j] * (s <= -1.0 ? 3.0 + s : 1.0 - s);
    }
    double dot = 0, na = 0, nb = 0;
    for (int j = 0; j <= 64; ++j) {
        dot += pr.left[j] * psi[j];
        na += pr.left[j] * pr.left[j];
        nb += psi[j] * psi[j];
    }
    CHECK(std::fabs(dot) / std::sqrt(na * nb) > 0.999);
}

TEST_CASE("nonlocal symmetric spectral bound is negative and mesh-stable") {
    auto a = build_nonlocal_laplacian({1, 1, 1, 1}, 0.0, 1.0, 100);
    auto b = build_nonlocal_laplacian({1, 1, 1, 1}, 0.0, 1.0, 200);
    CHECK(b.lambda0 < -1e-3);
    CHECK(std::fabs(a.lambda0 - b.lambda0) <= 0.01 * std::fabs(b.lambda0));
    CHECK(b.name == "nonlocal_symmetric");
}

TEST_CASE("thermostat eigenvalue and resolvent at zero") {
    auto op = make_named_operator("thermostat", 200, {{"beta", 0.2}}, {});
    CHECK(op.lambda0 < -0.065);
    CHECK(op.lambda0 > -0.08);
    auto rep = margins(resolvent(op.matrix, 0.0), op.frame);
    CHECK(rep.lower_margin > 0.0);
    CHECK(rep.upper_margin >= rep.lower_margin);
}

TEST_CASE("eigensolver converges with positive vectors on every operator") {
    std::vector<GalleryOperator> ops;
    for (const char* nm : {"dirichlet", "neumann", "periodic", "nonlocal_symmetric", "thermostat"})
        ops.push_back(make_named_operator(nm, 60, {}, {}));
    ops.push_back(make_named_operator("graph", 0, {{"n_per_unit", 8}},
                                      {{0, 1, 1.0}, {0, 2, 1.5}, {0, 3, 2.0}}));
    ops.push_back(make_named_operator("odd_order", 31, {}, {}));
    ops.push_back(make_named_operator("delay", 32, {}, {}));
    for (const auto& op : ops) {
        INFO(op.name);
        auto pr = eigenpair_near(op.matrix, op.lambda0);
        CHECK(pr.residual <= 1e-8);
        for (double v : pr.right) CHECK(v > 0.0);
        for (double v : pr.left) CHECK(v > 0.0);
    }
}

TEST_CASE("predicted verdicts and parameters are wired through") {
    auto d = make_named_operator("dirichlet", 30, {}, {});
    CHECK(d.predicted.uniform_max == Verdict::holds);
    CHECK(d.predicted.uniform_antimax == Verdict::fails);
    auto nm = make_named_operator("neumann", 30, {}, {});
    CHECK(nm.predicted.uniform_max == Verdict::untested);
    CHECK(nm.predicted.uniform_antimax == Verdict::holds);
    auto th = make_named_operator("thermostat", 30, {}, {});
    CHECK(th.params.at("beta") == 0.2);
    CHECK(th.predicted.uniform_max == Verdict::holds);
    auto od = make_named_operator("odd_order", 31, {{"ell", 1}}, {});
    CHECK(od.params.at("ell") == 1.0);
    CHECK(std::string(verdict_name(Verdict::fails)) == "fails");
    CHECK(std::string(grid_kind_name(od.grid.kind)) == "fourier");
    CHECK(default_n("odd_order") == 127);
    CHECK(default_n("delay") == 64);
    CHECK(default_n("dirichlet") == 200);
}
