#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>
#include <vector>

#include "evlab/errors.hpp"
#include "evlab/gallery.hpp"
#include "evlab/lattice.hpp"
#include "evlab/numerics.hpp"
#include "evlab/principles.hpp"
#include "evlab/rng.hpp"

using namespace evlab;

namespace {

constexpr double kPi = 3.14159265358979323846;

const std::vector<Edge> kStar = {{0, 1, 1.0}, {0, 2, 1.5}, {0, 3, 2.0}};

GalleryOperator named(const std::string& name) {
    return build_named_at(name, {}, kStar, default_n(name));
}

const std::vector<std::string> kGalleryNames = {
    "dirichlet",  "neumann", "periodic",  "nonlocal_symmetric",
    "thermostat", "graph",   "odd_order", "delay"};

double max_diff(const DenseMatrix& A, const DenseMatrix& B) {
    double d = 0.0;
    for (size_t i = 0; i < A.a.size(); ++i) d = std::max(d, std::fabs(A.a[i] - B.a[i]));
    return d;
}

// Largest 2x2 minor of P relative to max|P|^2; zero iff P has rank one.
double worst_minor(const DenseMatrix& P) {
    Rng rng(7);
    const int n = P.n;
    double worst = 0.0;
    for (int s = 0; s < 200; ++s) {
        const int i = (int)rng.index(n), k = (int)rng.index(n);
        const int j = (int)rng.index(n), l = (int)rng.index(n);
        worst = std::max(worst, std::fabs(P.at(i, j) * P.at(k, l) - P.at(i, l) * P.at(k, j)));
    }
    const double m = max_abs(P);
    return worst / (m * m);
}

GalleryOperator diag_op(std::vector<double> d, int m1, int m2) {
    GalleryOperator op;
    const int n = (int)d.size();
    op.name = "diag";
    op.matrix = DenseMatrix(n);
    for (int i = 0; i < n; ++i) op.matrix.at(i, i) = d[i];
    op.frame.u.assign(n, 1.0);
    op.frame.phi.assign(n, 1.0);
    op.frame.weights.assign(n, 1.0);
    op.lambda0 = d[0];
    op.continuum_m1 = m1;
    op.continuum_m2 = m2;
    op.grid.kind = GridKind::interval;
    op.grid.n = n;
    return op;
}

int count_class(const ScanReport& sc, MuClass cls) {
    int c = 0;
    for (const auto& p : sc.points) c += p.cls == cls;
    return c;
}

}  // namespace

TEST_CASE("spectral data satisfies the projection invariants on every operator") {
    for (const auto& name : kGalleryNames) {
        CAPTURE(name);
        const auto op = named(name);
        const auto sd = build_spectral_data(op);
        CHECK(sd.simple);
        CHECK(sd.gap > 0.0);

        const auto& P = sd.projection;
        CHECK(max_diff(matmul(P, P), P) <= 1e-8 * max_abs(P));
        DenseMatrix l0P = P;
        for (double& x : l0P.a) x *= sd.pair.value;
        CHECK(max_diff(matmul(op.matrix, P), l0P) <= 1e-6 * max_abs(op.matrix));
        CHECK(worst_minor(P) < 1e-10);
    }
}

TEST_CASE("principal eigenvalues and gaps land on the known spectra") {
    auto sd = [&](const char* n) { return build_spectral_data(named(n)); };

    const auto dir = sd("dirichlet");
    CHECK(dir.pair.value == doctest::Approx(-kPi * kPi).epsilon(0.002));
    CHECK(dir.gap == doctest::Approx(3.0 * kPi * kPi).epsilon(0.01));
    for (double x : dir.pair.right) CHECK(x > 0.0);

    CHECK(std::fabs(sd("neumann").pair.value) < 1e-10);
    CHECK(sd("neumann").gap == doctest::Approx(kPi * kPi).epsilon(0.01));
    CHECK(std::fabs(sd("periodic").pair.value) < 1e-10);
    CHECK(sd("periodic").gap == doctest::Approx(4.0 * kPi * kPi).epsilon(0.01));
    CHECK(sd("nonlocal_symmetric").pair.value == doctest::Approx(-2.96070).epsilon(1e-4));
    CHECK(sd("thermostat").pair.value == doctest::Approx(-0.071860).epsilon(1e-3));
    CHECK(std::fabs(sd("graph").pair.value) < 1e-10);
    // Operator norm ~6e7; an absolute eigenvalue bound must leave room for
    // roundoff at that scale (1e-8 is ~1.6e-16 relative).
    CHECK(std::fabs(sd("odd_order").pair.value) < 1e-8);
    CHECK(std::fabs(sd("delay").pair.value) < 1e-10);
}

TEST_CASE("neumann projection is the averaging operator") {
    const auto op = named("neumann");
    const auto sd = build_spectral_data(op);
    double worst = 0.0;
    for (int i = 0; i < op.grid.n; ++i)
        for (int j = 0; j < op.grid.n; ++j)
            worst = std::max(worst, std::fabs(sd.projection.at(i, j) - op.frame.weights[j]));
    CHECK(worst <= 1e-12);
    const Vec p1 = matvec(sd.projection, Vec(op.grid.n, 1.0));
    for (double x : p1) CHECK(x == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("delay projection fixes constants and pairs against the tent profile") {
    const auto op = named("delay");
    const auto sd = build_spectral_data(op);
    const Vec p1 = matvec(sd.projection, Vec(op.grid.n, 1.0));
    for (double x : p1) CHECK(x == doctest::Approx(1.0).epsilon(1e-12));
    // Left eigenvector aligns with w_j * v(s_j), v the tent profile of the
    // history pairing.
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (int j = 0; j < op.grid.n; ++j) {
        const double s = op.grid.coords[j];
        const double v = s <= -1.0 ? 3.0 + s : 1.0 - s;
        const double ref = op.frame.weights[j] * v;
        dot += sd.pair.left[j] * ref;
        na += sd.pair.left[j] * sd.pair.left[j];
        nb += ref * ref;
    }
    CHECK(std::fabs(dot) / std::sqrt(na * nb) > 0.9999);
}

TEST_CASE("pole order is the continuum exponent sum floored at one") {
    CHECK(pole_order_m(named("neumann")) == 2);
    CHECK(pole_order_m(named("odd_order")) == 2);
    CHECK(pole_order_m(named("delay")) == 1);
    CHECK(pole_order_m(diag_op({0.0, -4.0}, 0, 0)) == 1);
}

TEST_CASE("scan classifies the left neighbourhood strong_negative for neumann and periodic") {
    for (const char* name : {"neumann", "periodic"}) {
        CAPTURE(name);
        const auto sc = scan(named(name), -0.5, -0.01, 50);
        CHECK(sc.points.size() == 48);
        CHECK(sc.skipped.size() == 2);
        CHECK(count_class(sc, MuClass::strong_negative) == 48);
        CHECK(std::fabs(sc.lambda0) < 1e-10);
        CHECK(sc.left_window.lo == doctest::Approx(-0.5));
        CHECK(sc.left_window.hi == doctest::Approx(sc.lambda0));
        CHECK_FALSE(sc.left_window.empty());
        CHECK(sc.right_window.empty());
        CHECK(sc.mu_values.size() == sc.points.size());
        // Skipped points sit inside the spectrum-proximity zone.
        for (double mu : sc.skipped) CHECK(std::fabs(mu - sc.lambda0) < sc.zone);
    }
}

TEST_CASE("scan classifies the right neighbourhood strong_positive for dirichlet") {
    const double l0 = -kPi * kPi;
    const auto sc = scan(named("dirichlet"), l0 + 0.05, l0 + 1.0, 30);
    CHECK(sc.points.size() == 29);
    CHECK(sc.skipped.size() == 1);
    CHECK(count_class(sc, MuClass::strong_positive) == 29);
    CHECK_FALSE(sc.right_window.empty());
    CHECK(sc.right_window.lo == doctest::Approx(sc.lambda0));
    CHECK(sc.right_window.hi == doctest::Approx(l0 + 1.0).epsilon(1e-3));
}

TEST_CASE("dirichlet has no strong_negative classification left of its eigenvalue") {
    const auto sc = scan(named("dirichlet"), -15.0, -kPi * kPi - 0.05, 41);
    CHECK(sc.points.size() + sc.skipped.size() == 41);
    CHECK(count_class(sc, MuClass::strong_negative) == 0);
    CHECK(count_class(sc, MuClass::mixed) == (int)sc.points.size());
    CHECK(sc.left_window.empty());
}

TEST_CASE("scan classification is invariant under frame rescaling") {
    const auto op = named("neumann");
    const auto base = scan(op, -0.5, -0.01, 50);
    GalleryOperator rescaled = op;
    for (auto& x : rescaled.frame.u) x *= 3.7;
    for (auto& x : rescaled.frame.phi) x *= 0.21;
    const auto sc = scan(rescaled, -0.5, -0.01, 50);

    REQUIRE(sc.points.size() == base.points.size());
    CHECK(sc.left_window.lo == base.left_window.lo);
    CHECK(sc.left_window.hi == base.left_window.hi);
    for (size_t i = 0; i < base.points.size(); ++i) {
        CHECK(sc.points[i].cls == base.points[i].cls);
        CHECK(sc.points[i].c_hat ==
              doctest::Approx(base.points[i].c_hat / (3.7 * 0.21)).epsilon(1e-12));
    }
}

TEST_CASE("scan validates its grid") {
    CHECK_THROWS_AS(scan(named("neumann"), -0.5, -0.01, 1), InvalidParam);
    CHECK_THROWS_AS(scan(named("neumann"), -0.01, -0.5, 10), InvalidParam);
}

TEST_CASE("refinement keeps neumann, periodic, graph and thermostat margins mesh-uniform") {
    struct Study {
        const char* name;
        std::map<std::string, double> params;
        std::vector<Edge> edges;
        double probe;
        std::vector<int> ns;
        double c_hat;
    };
    const std::vector<Study> cases = {
        {"neumann", {}, {}, -0.25, {50, 100, 200, 400}, 4.1717},
        {"periodic", {}, {}, -0.25, {50, 100, 200, 400}, 4.0420},
        {"graph", {}, kStar, -0.05, {8, 16, 32, 64}, 4.9759},
        {"thermostat", {{"beta", 0.2}}, {}, 0.0, {50, 100, 200, 400}, 5.0000},
    };
    for (const auto& c : cases) {
        CAPTURE(c.name);
        const auto st = refinement_study(c.name, c.params, c.edges, c.probe, c.ns);
        CHECK(st.verdict == RefinementVerdict::uniform);
        REQUIRE(st.rows.size() == 4);
        CHECK(st.rows.back().c_hat == doctest::Approx(c.c_hat).epsilon(1e-3));
        CHECK(st.rows.back().c_hat / st.rows.front().c_hat ==
              doctest::Approx(1.0).epsilon(0.05));
    }
}

TEST_CASE("refinement flags the dirichlet domination constant divergent") {
    const auto st = refinement_study("dirichlet", {}, {}, 0.0, {50, 100, 200, 400});
    CHECK(st.verdict == RefinementVerdict::divergent);
    REQUIRE(st.rows.size() == 4);
    CHECK(st.rows[0].c_hat == doctest::Approx(5.0725).epsilon(1e-3));
    CHECK(st.rows[1].c_hat == doctest::Approx(10.1354).epsilon(1e-3));
    CHECK(st.rows[2].c_hat == doctest::Approx(20.2659).epsilon(1e-3));
    CHECK(st.rows[3].c_hat == doctest::Approx(40.5293).epsilon(1e-3));
    for (size_t i = 1; i < st.rows.size(); ++i)
        CHECK(st.rows[i].c_hat / st.rows[i - 1].c_hat > 1.4);
}

TEST_CASE("refinement validates meshes and propagates spectrum hits") {
    CHECK_THROWS_AS(refinement_study("neumann", {}, {}, -0.25, {100}), InvalidParam);
    CHECK_THROWS_AS(refinement_study("neumann", {}, {}, -0.25, {200, 100}), InvalidParam);
    CHECK_THROWS_AS(refinement_study("neumann", {}, {}, 0.0, {50, 100}), MuInSpectrum);
}

TEST_CASE("two-sided domination extends across shifts and powers for neumann") {
    const auto op = named("neumann");
    const auto r = check_two_sided_extension(op, 1.0, {-0.3, 0.5, 2.0}, 3);
    CHECK(r.ok);
    CHECK(r.c_hat0 == doctest::Approx(1.3130).epsilon(1e-3));
    CHECK(r.max_ratio < 1.0);
    REQUIRE(r.rows.size() == 9);
    for (const auto& row : r.rows) CHECK(row.c_hat <= row.bound);

    const auto trivial = check_two_sided_extension(op, 1.0, {1.0}, 1);
    CHECK(trivial.ok);
    CHECK(trivial.max_ratio == doctest::Approx(1.0).epsilon(1e-6));

    CHECK_THROWS_AS(check_two_sided_extension(op, 1.0, {0.0}, 2), MuInSpectrum);
}

TEST_CASE("two-sided domination extends for the odd-order and delay operators") {
    const auto odd = check_two_sided_extension(named("odd_order"), 1.0, {-1.0}, 3);
    CHECK(odd.ok);
    CHECK(odd.max_ratio == doctest::Approx(0.9841).epsilon(1e-2));

    const auto del = check_two_sided_extension(named("delay"), 0.5, {0.2, 1.0}, 3);
    CHECK(del.ok);
    CHECK(del.max_ratio < 0.5);
}

TEST_CASE("one-sided upper bounds extend rightward from a nonnegative resolvent") {
    const auto op = named("neumann");
    const auto r = check_one_sided_extension(op, 1.0, Direction::right_upper, {2.0, 5.0});
    CHECK(r.ok);
    CHECK(r.K == doctest::Approx(1.3130).epsilon(1e-3));
    CHECK_FALSE(r.alternating_applicable);
    CHECK(r.single_mesh);
    REQUIRE(r.rows.size() == 8);  // two shifts, powers 1..4
    for (const auto& row : r.rows) {
        CHECK_FALSE(row.exploratory);
        CHECK(row.margin <= row.limit);
    }
}

TEST_CASE("alternating powers stay below zero at a nonpositive resolvent point") {
    const auto r =
        check_one_sided_extension(named("neumann"), -0.25, Direction::left_lower, {});
    CHECK(r.ok);  // empty shift list: vacuous
    CHECK(r.K == doctest::Approx(4.1717).epsilon(1e-3));
    CHECK(r.alternating_applicable);
    CHECK(r.alternating_ok);
}

TEST_CASE("interval operators with first-order exponents are direction-free") {
    const auto r = check_one_sided_extension(named("neumann"), -0.25, Direction::left_lower,
                                             {-0.4, -0.1});
    CHECK(r.ok);
    REQUIRE(r.rows.size() == 8);
    for (const auto& row : r.rows) CHECK(row.exploratory == (row.mu > -0.25));
}

TEST_CASE("direction violations throw unless exploratory mode is requested") {
    const auto op = named("delay");
    CHECK_THROWS_AS(check_one_sided_extension(op, 0.5, Direction::right_upper, {0.2}),
                    DirectionViolated);
    const auto r = check_one_sided_extension(op, 0.5, Direction::right_upper, {0.2}, {}, true);
    CHECK(r.ok);  // exploratory rows are reported, never asserted
    REQUIRE_FALSE(r.rows.empty());
    CHECK(r.rows[0].exploratory);
}

TEST_CASE("one-sided refinement holds the constant across meshes") {
    const auto rr = check_one_sided_refined(named("neumann"), 1.0, Direction::right_upper,
                                            {2.0, 5.0}, {100, 200, 400});
    CHECK(rr.all_ok);
    CHECK(rr.uniform_K);
    REQUIRE(rr.reports.size() == 3);
    for (const auto& rep : rr.reports) {
        CHECK(rep.K == doctest::Approx(1.3130).epsilon(1e-3));
        CHECK_FALSE(rep.single_mesh);  // refinement evidence, not a lone mesh
    }
}

TEST_CASE("scaled resolvent powers collapse onto the projection") {
    struct Case {
        const char* name;
        int m;
    };
    for (const auto& c : {Case{"neumann", 2}, Case{"odd_order", 2}, Case{"delay", 1}}) {
        const auto op = named(c.name);
        const auto sd = build_spectral_data(op);
        for (double side : {-1.0, 1.0}) {
            CAPTURE(c.name);
            CAPTURE(side);
            std::vector<double> mus;
            for (int k = 1; k <= 8; ++k) mus.push_back(sd.pair.value + side * std::pow(2.0, -k));
            const auto r = check_projection_convergence(op, c.m, mus);
            CHECK(r.eventually_decreasing);
            CHECK(r.converged);
            CHECK(r.ok);
            CHECK(r.c.back() < 1e-2 * r.c.front());
        }
    }
}

TEST_CASE("projection decay matches the diagonal closed form") {
    const auto op = diag_op({0.0, -4.0}, 1, 0);
    std::vector<double> mus;
    for (int k = 1; k <= 8; ++k) mus.push_back(std::pow(2.0, -k));
    const auto r = check_projection_convergence(op, 1, mus);
    CHECK(r.ok);
    REQUIRE(r.c.size() == mus.size());
    for (size_t i = 0; i < mus.size(); ++i)
        CHECK(r.c[i] == doctest::Approx(mus[i] / (mus[i] + 4.0)).epsilon(1e-12));
}

TEST_CASE("projection decay validates its inputs") {
    const auto op = named("neumann");
    CHECK_THROWS_AS(check_projection_convergence(op, 0, {0.5, 0.25}), InvalidParam);
    CHECK_THROWS_AS(check_projection_convergence(op, 2, {0.5}), InvalidParam);
    CHECK_THROWS_AS(check_projection_convergence(op, 2, {0.25, 0.5}), InvalidParam);
}

TEST_CASE("resolvent powers dominate the frame on both sides of the eigenvalue") {
    for (const char* name : {"neumann", "dirichlet", "graph", "delay"}) {
        CAPTURE(name);
        const auto v = check_powers_theorem(named(name));
        CHECK(v.ok);
        CHECK(v.right_ok);
        CHECK(v.left_ok);
        REQUIRE(v.right.size() == 3);
        REQUIRE(v.left.size() == 3);
        for (const auto& p : v.right) CHECK(p.margin > 0.0);
    }
    CHECK(check_powers_theorem(named("neumann")).m == 2);
    CHECK(check_powers_theorem(named("delay")).m == 1);
}

TEST_CASE("a diagonal resolvent cannot dominate the strictly positive frame") {
    // Off-diagonal zeros pin the lower margin at 0: rank-one domination needs
    // a strictly positive eigenvector, which diag(0,-4) lacks.
    const auto v = check_powers_theorem(diag_op({0.0, -4.0}, 1, 0));
    CHECK_FALSE(v.ok);
    CHECK_FALSE(v.right_ok);
    CHECK_FALSE(v.left_ok);
    for (const auto& p : v.right) CHECK(p.margin == doctest::Approx(0.0));
}

TEST_CASE("the three anti-maximum faces agree on every tested operator") {
    const auto pos = check_antimax_characterization(named("neumann"), 1.0);
    CHECK(pos.all_true);
    CHECK(pos.consistent);
    CHECK(pos.window_exists);
    CHECK(pos.nonpositive_mu_exists);
    CHECK(pos.chat_stable);
    CHECK(pos.chat_growth == doctest::Approx(1.0).epsilon(0.05));

    const auto th = check_antimax_characterization(named("thermostat"), 0.0);
    CHECK(th.all_true);
    CHECK(th.consistent);

    const auto neg = check_antimax_characterization(named("dirichlet"), 0.0);
    CHECK(neg.consistent);
    CHECK_FALSE(neg.all_true);
    CHECK_FALSE(neg.window_exists);
    CHECK_FALSE(neg.nonpositive_mu_exists);
    CHECK_FALSE(neg.chat_stable);
    CHECK(neg.chat_growth > 1.4);  // (iii) decided by the divergence diagnostic
    CHECK(neg.left_scan.left_window.empty());
}

TEST_CASE("the characterization rejects a sign-indefinite base point") {
    CHECK_THROWS_AS(check_antimax_characterization(named("neumann"), -0.25),
                    PreconditionFailed);
}

TEST_CASE("the first-order group evolution leaves the positive cone") {
    const int n = 127;
    Vec f(n);
    for (int i = 0; i < n; ++i) {
        const double x = (double)i / n;
        const double t = (x - 0.5) / 0.05;
        f[i] = std::exp(-t * t);
    }
    std::vector<double> grid;
    for (int i = 1; i <= 1000; ++i) grid.push_back(0.01 * i);

    const auto w1 = check_group_not_eventually_positive(1, n, grid, f);
    CHECK(w1.found);
    CHECK(w1.t == doctest::Approx(10.0));
    CHECK(w1.entry == doctest::Approx(-0.2958).epsilon(1e-2));
    CHECK(w1.entry < -1e-6);
    CHECK(w1.cyclicity_excluded);

    const auto w0 = check_group_not_eventually_positive(0, n, grid, f);
    CHECK_FALSE(w0.found);
    CHECK_FALSE(w0.cyclicity_excluded);
}

TEST_CASE("the group check validates its inputs") {
    const Vec f(127, 1.0);
    CHECK_THROWS_AS(check_group_not_eventually_positive(1, 126, {1.0}, Vec(126, 1.0)),
                    InvalidParam);
    CHECK_THROWS_AS(check_group_not_eventually_positive(1, 127, {1.0}, Vec(127, 0.0)),
                    InvalidParam);
    Vec neg(127, 1.0);
    neg[3] = -0.5;
    CHECK_THROWS_AS(check_group_not_eventually_positive(1, 127, {1.0}, neg), InvalidParam);
    CHECK_THROWS_AS(check_group_not_eventually_positive(-1, 127, {1.0}, f), InvalidParam);
}

TEST_CASE("the square-root factorization bounds the domination constant") {
    const auto r = check_form_domain_estimate(named("neumann"), 1.0);
    CHECK(r.ok);
    CHECK(r.bound_ok);
    CHECK(r.stable);
    CHECK_FALSE(r.single_mesh);
    CHECK(r.c_hat == doctest::Approx(1.3130).epsilon(1e-3));
    CHECK(r.c_hat <= r.alpha * r.beta);
    REQUIRE(r.c_hats.size() == 3);
    for (double c : r.c_hats) CHECK(c == doctest::Approx(r.c_hat).epsilon(1e-3));

    const auto nl = check_form_domain_estimate(named("nonlocal_symmetric"), 1.0);
    CHECK(nl.ok);
    CHECK(nl.c_hat <= nl.alpha * nl.beta);
}

TEST_CASE("the factorization bound is exact for a positive diagonal resolvent") {
    const auto r = check_form_domain_estimate(diag_op({-1.0, -2.0}, 1, 0), 0.0);
    CHECK(r.ok);
    CHECK(r.single_mesh);
    CHECK(r.c_hat == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.alpha * r.beta == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("the factorization rejects unusable operators") {
    CHECK_THROWS_AS(check_form_domain_estimate(named("neumann"), -0.25), NotPositiveDefinite);
    CHECK_THROWS_AS(check_form_domain_estimate(named("odd_order"), 1.0), NotSymmetric);
    CHECK_THROWS_AS(check_form_domain_estimate(named("thermostat"), 0.0), NotSymmetric);
    auto skew = diag_op({-1.0, -2.0}, 1, 0);
    skew.frame.phi = {2.0, 2.0};
    CHECK_THROWS_AS(check_form_domain_estimate(skew, 0.0), InvalidParam);
}

TEST_CASE("the resolvent expansion identity holds at roundoff order") {
    Rng rng(42);
    for (const auto& name : kGalleryNames) {
        CAPTURE(name);
        const auto op = named(name);
        const auto sd = build_spectral_data(op);
        const double g = std::min(sd.gap, 1.0);
        const double mu = sd.pair.value + g * (0.25 + 0.5 * rng.canonical());
        const double mu0 = sd.pair.value + g * (0.25 + 0.5 * rng.canonical());
        for (int order : {1, 2, 5})
            CHECK(expansion_residual(op.matrix, mu, mu0, order) <= 1e-8);
    }
}

TEST_CASE("classification thresholds scale with the domination constant") {
    MarginReport m;
    m.lower_margin = -2.0;
    m.upper_margin = 5.0;
    m.two_sided_constant = 5.0;
    Thresholds th;
    CHECK(classification_threshold(m, th) == doctest::Approx(5e-9));
}

TEST_CASE("verdict names are stable spellings") {
    CHECK(std::string(mu_class_name(MuClass::strong_positive)) == "strong_positive");
    CHECK(std::string(mu_class_name(MuClass::strong_negative)) == "strong_negative");
    CHECK(std::string(mu_class_name(MuClass::mixed)) == "mixed");
    CHECK(std::string(mu_class_name(MuClass::skipped_near_spectrum)) ==
          "skipped_near_spectrum");
    CHECK(std::string(refinement_verdict_name(RefinementVerdict::uniform)) == "uniform");
    CHECK(std::string(refinement_verdict_name(RefinementVerdict::divergent)) == "divergent");
    CHECK(std::string(refinement_verdict_name(RefinementVerdict::inconclusive)) ==
          "inconclusive");
}
