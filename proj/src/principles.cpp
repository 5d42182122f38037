#include "evlab/principles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "evlab/errors.hpp"

namespace evlab {

namespace {

DenseMatrix power_matrix(const DenseMatrix& A, int k) {
    if (k <= 0) return identity_matrix(A.n);
    DenseMatrix P = A;
    for (int i = 1; i < k; ++i) P = matmul(P, A);
    return P;
}

DenseMatrix scaled(const DenseMatrix& A, double s) {
    DenseMatrix B = A;
    for (double& x : B.a) x *= s;
    return B;
}

DenseMatrix plus_scaled(const DenseMatrix& A, double s, const DenseMatrix& B) {
    DenseMatrix C = A;
    for (size_t i = 0; i < C.a.size(); ++i) C.a[i] += s * B.a[i];
    return C;
}

// Longest strictly decreasing suffix must cover at least half the sequence.
bool eventually_decreasing(const std::vector<double>& c) {
    if (c.size() < 2) return false;
    size_t j = c.size() - 1;
    while (j > 0 && c[j] < c[j - 1]) --j;
    return j <= c.size() / 2;
}

}  // namespace

double classification_threshold(const MarginReport& m, const Thresholds& th) {
    return th.eps_cls_rel * m.two_sided_constant;
}

SpectralData build_spectral_data(const GalleryOperator& op) {
    SpectralData sd;
    sd.pair = eigenpair_near(op.matrix, op.lambda0);
    const int n = op.matrix.n;
    sd.projection = DenseMatrix(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            sd.projection.at(i, j) = sd.pair.right[i] * sd.pair.left[j];
    sd.gap = spectral_gap(op.matrix, sd.pair.value);
    sd.simple = sd.gap > 1e-7 * (1.0 + std::fabs(sd.pair.value));
    return sd;
}

int pole_order_m(const GalleryOperator& op) {
    return std::max(1, op.continuum_m1 + op.continuum_m2);
}

const char* mu_class_name(MuClass c) {
    switch (c) {
        case MuClass::strong_positive: return "strong_positive";
        case MuClass::strong_negative: return "strong_negative";
        case MuClass::mixed: return "mixed";
        case MuClass::skipped_near_spectrum: return "skipped_near_spectrum";
    }
    return "mixed";
}

const char* refinement_verdict_name(RefinementVerdict v) {
    switch (v) {
        case RefinementVerdict::uniform: return "uniform";
        case RefinementVerdict::divergent: return "divergent";
        case RefinementVerdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

ScanReport scan(const GalleryOperator& op, double mu_min, double mu_max, int steps,
                const Thresholds& th) {
    if (!(mu_min < mu_max)) throw InvalidParam("scan needs mu_min < mu_max");
    if (steps < 2) throw InvalidParam("scan needs steps >= 2");

    const DenseMatrix& A = op.matrix;
    ScanReport rep;
    rep.lambda0 = eigenpair_near(A, op.lambda0).value;
    rep.gap = spectral_gap(A, rep.lambda0);
    const double step = (mu_max - mu_min) / (steps - 1);
    rep.zone = std::min(rep.gap / 50.0, 2.5 * step);

    std::vector<double> grid(steps), smin(steps);
    for (int i = 0; i < steps; ++i) {
        grid[i] = mu_min + i * step;
        smin[i] = sigma_min(A, grid[i]);
    }
    std::vector<double> dips = {rep.lambda0};
    for (int i = 1; i + 1 < steps; ++i)
        if (smin[i] < smin[i - 1] && smin[i] < smin[i + 1]) dips.push_back(grid[i]);

    for (int i = 0; i < steps; ++i) {
        double nearest = std::numeric_limits<double>::infinity();
        for (double d : dips) nearest = std::min(nearest, std::fabs(grid[i] - d));
        if (nearest < rep.zone) {
            rep.skipped.push_back(grid[i]);
            continue;
        }
        ScanPoint p;
        p.mu = grid[i];
        try {
            DenseMatrix R = resolvent(A, p.mu);
            p.margins = margins(R, op.frame);
            p.c_hat = phi_to_u_norm(R, op.frame);
        } catch (const Error&) {
            rep.skipped.push_back(p.mu);
            continue;
        }
        const double theta = classification_threshold(p.margins, th);
        if (p.margins.lower_margin > theta)
            p.cls = MuClass::strong_positive;
        else if (p.margins.upper_margin < -theta)
            p.cls = MuClass::strong_negative;
        else
            p.cls = MuClass::mixed;
        rep.points.push_back(p);
        rep.mu_values.push_back(p.mu);
    }

    rep.right_window = {rep.lambda0, rep.lambda0};
    for (const ScanPoint& p : rep.points) {
        if (p.mu <= rep.lambda0) continue;
        if (p.cls != MuClass::strong_positive) break;
        rep.right_window.hi = p.mu;
    }
    rep.left_window = {rep.lambda0, rep.lambda0};
    for (auto it = rep.points.rbegin(); it != rep.points.rend(); ++it) {
        if (it->mu >= rep.lambda0) continue;
        if (it->cls != MuClass::strong_negative) break;
        rep.left_window.lo = it->mu;
    }
    return rep;
}

RefinementStudy refinement_study(const std::string& name,
                                 const std::map<std::string, double>& params,
                                 const std::vector<Edge>& edges, double probe_mu,
                                 const std::vector<int>& n_list, const Thresholds& th) {
    if (n_list.size() < 2) throw InvalidParam("refinement needs at least two meshes");
    for (size_t i = 1; i < n_list.size(); ++i)
        if (n_list[i] <= n_list[i - 1])
            throw InvalidParam("refinement meshes must be strictly increasing");

    RefinementStudy st;
    st.probe_mu = probe_mu;
    for (int n_raw : n_list) {
        const int n = admissible_n(name, n_raw);
        GalleryOperator op = build_named_at(name, params, edges, n);
        DenseMatrix R = resolvent(op.matrix, probe_mu);
        RefinementRow row;
        row.n = n;
        row.margins = margins(R, op.frame);
        row.c_hat = phi_to_u_norm(R, op.frame);

        const double l0 = eigenpair_near(op.matrix, op.lambda0).value;
        row.lambda0 = l0;
        const double r = std::min(spectral_gap(op.matrix, l0), 1.0) / 2.0;
        ScanReport sc = scan(op, l0 - r, l0 + r, 12, th);
        row.right_width = sc.right_window.width();
        row.left_width = sc.left_window.width();
        st.rows.push_back(row);
    }

    const auto& rows = st.rows;
    bool divergent = true;
    for (size_t i = 1; i < rows.size(); ++i)
        divergent = divergent && rows[i].c_hat >= th.divergent_ratio * rows[i - 1].c_hat;

    auto stable = [&](double first, double last) {
        if (first == 0.0 || (first > 0.0) != (last > 0.0)) return false;
        const double ratio = std::fabs(last) / std::fabs(first);
        return ratio >= th.uniform_lo && ratio <= th.uniform_hi;
    };
    const bool uniform =
        rows.size() >= 4 &&
        stable(rows.front().margins.lower_margin, rows.back().margins.lower_margin) &&
        stable(rows.front().margins.upper_margin, rows.back().margins.upper_margin);

    st.verdict = divergent ? RefinementVerdict::divergent
                 : uniform ? RefinementVerdict::uniform
                           : RefinementVerdict::inconclusive;
    return st;
}

ExtensionReport check_two_sided_extension(const GalleryOperator& op, double mu0,
                                          const std::vector<double>& mu_list,
                                          int n_max_power, const Thresholds& th) {
    if (n_max_power < 1) throw InvalidParam("extension needs n_max_power >= 1");
    (void)th;
    const DenseMatrix& A = op.matrix;
    const DenseMatrix R0 = resolvent(A, mu0);

    ExtensionReport rep;
    rep.mu0 = mu0;
    rep.c_hat0 = phi_to_u_norm(R0, op.frame);
    const double ku = frame_ku(op.frame);

    for (double mu : mu_list) {
        const DenseMatrix R = resolvent(A, mu);
        const double delta = mu0 - mu;
        const double aln = al_op_norm(R, op.frame);
        const DenseMatrix shifted = plus_scaled(identity_matrix(A.n), delta, R);

        DenseMatrix Rpow = R;
        for (int p = 1; p <= n_max_power; ++p) {
            if (p > 1) Rpow = matmul(Rpow, R);
            double bound;
            if (p == 1) {
                bound = rep.c_hat0 * (1.0 + std::fabs(delta) * aln);
            } else {
                const DenseMatrix mid = matmul(matmul(shifted, power_matrix(R, p - 2)), shifted);
                bound = rep.c_hat0 * rep.c_hat0 * sup_op_norm(mid) * ku;
            }
            bound *= 1.0 + 1e-9;
            ExtensionRow row{mu, p, phi_to_u_norm(Rpow, op.frame), bound};
            rep.max_ratio = std::max(rep.max_ratio, row.c_hat / row.bound);
            rep.rows.push_back(row);
        }
    }
    rep.ok = rep.max_ratio <= 1.0;
    return rep;
}

OneSidedReport check_one_sided_extension(const GalleryOperator& op, double mu0,
                                         Direction direction,
                                         const std::vector<double>& mu_list,
                                         const Thresholds& th, bool exploratory) {
    const bool direction_free = op.grid.kind == GridKind::interval &&
                                op.continuum_m1 == 1 && op.continuum_m2 == 1;
    auto violates = [&](double mu) {
        return direction == Direction::left_lower ? mu > mu0 : mu < mu0;
    };
    if (!direction_free && !exploratory)
        for (double mu : mu_list)
            if (violates(mu)) throw DirectionViolated();

    const DenseMatrix R0 = resolvent(op.matrix, mu0);
    const MarginReport m0 = margins(R0, op.frame);
    const double theta0 = classification_threshold(m0, th);
    const double ku = frame_ku(op.frame);

    OneSidedReport rep;
    rep.direction = direction;
    rep.K = direction == Direction::left_lower ? std::max(0.0, -m0.lower_margin) + theta0
                                               : std::max(0.0, m0.upper_margin) + theta0;
    rep.ok = true;
    for (double mu : mu_list) {
        const DenseMatrix R = resolvent(op.matrix, mu);
        const double delta = mu0 - mu;
        const MarginReport m = margins(R, op.frame);
        const double theta = classification_threshold(m, th);
        const double shift_limit = rep.K * (1.0 + std::fabs(delta) * al_op_norm(R, op.frame)) + theta;
        const double chat = phi_to_u_norm(R, op.frame);

        DenseMatrix Rpow = R;
        for (int p = 1; p <= 4; ++p) {
            if (p > 1) Rpow = matmul(Rpow, R);
            OneSidedRow row;
            row.mu = mu;
            row.power = p;
            row.exploratory = violates(mu);
            row.limit = p == 1 ? shift_limit
                              : chat * chat * sup_op_norm(power_matrix(R, p - 2)) * ku *
                                        (1.0 + 1e-9) +
                                    theta;
            const MarginReport mp = p == 1 ? m : margins(Rpow, op.frame);
            row.margin = direction == Direction::left_lower ? mp.lower_margin : mp.upper_margin;
            const bool inside = direction == Direction::left_lower ? row.margin > -row.limit
                                                                   : row.margin < row.limit;
            if (!row.exploratory) rep.ok = rep.ok && inside;
            rep.rows.push_back(row);
        }
    }

    rep.alternating_applicable = m0.upper_margin < -theta0;
    if (rep.alternating_applicable) {
        rep.alternating_ok = true;
        DenseMatrix Rp = R0;
        for (int p = 1; p <= 3; ++p) {
            if (p > 1) Rp = matmul(Rp, R0);
            const double sign = (p % 2 == 1) ? 1.0 : -1.0;
            rep.alternating_ok =
                rep.alternating_ok && margins(scaled(Rp, sign), op.frame).upper_margin < 0.0;
        }
    }
    rep.single_mesh = true;
    return rep;
}

OneSidedRefinement check_one_sided_refined(const GalleryOperator& op, double mu0,
                                           Direction direction,
                                           const std::vector<double>& mu_list,
                                           const std::vector<int>& n_list,
                                           const Thresholds& th) {
    if (n_list.empty()) throw InvalidParam("refined one-sided check needs meshes");
    OneSidedRefinement out;
    out.all_ok = true;
    for (int n : n_list) {
        GalleryOperator at = rebuild_at(op, admissible_n(op.name, n));
        OneSidedReport r = check_one_sided_extension(at, mu0, direction, mu_list, th);
        r.single_mesh = false;
        out.ns.push_back(at.grid.n);
        out.all_ok = out.all_ok && r.ok;
        out.reports.push_back(std::move(r));
    }
    const double k0 = out.reports.front().K;
    const double k1 = out.reports.back().K;
    out.uniform_K = k0 > 0.0 && k1 / k0 >= th.uniform_lo && k1 / k0 <= th.uniform_hi;
    if (k0 <= 0.0) out.uniform_K = k1 <= 0.0;
    return out;
}

DecayReport check_projection_convergence(const GalleryOperator& op, int m,
                                         const std::vector<double>& mu_sequence) {
    if (m < 1) throw InvalidParam("projection decay needs m >= 1");
    if (mu_sequence.size() < 2) throw InvalidParam("projection decay needs >= 2 points");

    const SpectralData sd = build_spectral_data(op);
    for (size_t i = 1; i < mu_sequence.size(); ++i)
        if (std::fabs(mu_sequence[i] - sd.pair.value) >=
            std::fabs(mu_sequence[i - 1] - sd.pair.value))
            throw InvalidParam("mu sequence must approach lambda0");

    DecayReport rep;
    rep.m = m;
    rep.mu = mu_sequence;
    // P R = R P = P/(mu - lambda0), so (mu-lambda0)^m R^m - P equals
    // ((mu-lambda0) (I-P) R (I-P))^m exactly; evaluating through the
    // holomorphic part avoids pole-aligned roundoff swamping the difference.
    const DenseMatrix ip = plus_scaled(identity_matrix(op.matrix.n), -1.0, sd.projection);
    for (double mu : mu_sequence) {
        const DenseMatrix R = resolvent(op.matrix, mu);
        const DenseMatrix S = matmul(ip, matmul(R, ip));
        const double factor = std::pow(mu - sd.pair.value, m);
        rep.c.push_back(phi_to_u_norm(scaled(power_matrix(S, m), factor), op.frame));
    }
    rep.eventually_decreasing = eventually_decreasing(rep.c);
    rep.converged = rep.c.back() < 1e-2 * rep.c.front();
    rep.ok = rep.eventually_decreasing && rep.converged;
    return rep;
}

PowersVerdict check_powers_theorem(const GalleryOperator& op, const Thresholds& th) {
    const SpectralData sd = build_spectral_data(op);
    const double scale = std::min(sd.gap, 1.0);

    PowersVerdict v;
    v.m = pole_order_m(op);
    v.right_ok = v.left_ok = true;
    for (double frac : {1.0 / 200.0, 1.0 / 100.0, 1.0 / 50.0}) {
        const double off = scale * frac;

        PowersProbe right;
        right.mu = sd.pair.value + off;
        DenseMatrix Rm = power_matrix(resolvent(op.matrix, right.mu), v.m);
        MarginReport mr = margins(Rm, op.frame);
        right.margin = mr.lower_margin;
        right.ok = right.margin > classification_threshold(mr, th);
        v.right_ok = v.right_ok && right.ok;
        v.right.push_back(right);

        PowersProbe left;
        left.mu = sd.pair.value - off;
        const double sign = (v.m % 2 == 1) ? 1.0 : -1.0;
        DenseMatrix Lm = scaled(power_matrix(resolvent(op.matrix, left.mu), v.m), sign);
        MarginReport ml = margins(Lm, op.frame);
        left.margin = ml.upper_margin;
        left.ok = left.margin < -classification_threshold(ml, th);
        v.left_ok = v.left_ok && left.ok;
        v.left.push_back(left);
    }
    v.ok = v.right_ok && v.left_ok;
    return v;
}

CharacterizationVerdict check_antimax_characterization(const GalleryOperator& op,
                                                       double mu1, const Thresholds& th) {
    const SpectralData sd = build_spectral_data(op);
    if (!(mu1 > sd.pair.value))
        throw PreconditionFailed("characterization needs mu1 right of lambda0");
    {
        const DenseMatrix R1 = resolvent(op.matrix, mu1);
        const MarginReport m1 = margins(R1, op.frame);
        if (m1.lower_margin < -classification_threshold(m1, th))
            throw PreconditionFailed("resolvent at mu1 has negative entries");
    }

    CharacterizationVerdict v;
    v.mu1 = mu1;

    v.left_scan = scan(op, sd.pair.value - sd.gap / 2.0, sd.pair.value - sd.gap / 100.0, 48, th);
    v.window_exists = !v.left_scan.left_window.empty();

    for (const ScanPoint& p : v.left_scan.points)
        if (p.margins.upper_margin <= classification_threshold(p.margins, th))
            v.nonpositive_mu_exists = true;

    const int n = op.grid.n;
    std::vector<double> chats;
    for (int k : {n / 2, n, 2 * n}) {
        GalleryOperator at = rebuild_at(op, admissible_n(op.name, k));
        chats.push_back(phi_to_u_norm(resolvent(at.matrix, mu1), at.frame));
    }
    v.chat_growth = std::sqrt(chats.back() / chats.front());
    v.chat_stable = v.chat_growth < th.divergent_ratio;

    v.consistent = v.window_exists == v.nonpositive_mu_exists &&
                   v.nonpositive_mu_exists == v.chat_stable;
    v.all_true = v.window_exists && v.nonpositive_mu_exists && v.chat_stable;
    return v;
}

GroupWitness check_group_not_eventually_positive(int ell, int n,
                                                 const std::vector<double>& t_grid,
                                                 const Vec& f) {
    if (ell < 0) throw InvalidParam("group check needs ell >= 0");
    if (n < 3 || n % 2 == 0 || static_cast<int>(f.size()) != n)
        throw InvalidParam("group check needs odd n matching f");
    bool nonzero = false;
    for (double x : f) {
        if (x < 0.0) throw InvalidParam("group check needs f >= 0");
        nonzero = nonzero || x > 0.0;
    }
    if (!nonzero) throw InvalidParam("group check needs f != 0");

    GroupWitness w;
    w.ell = ell;
    const Symbol sym = odd_order_symbol(ell);
    const double floor = -1e-6 * sup_norm(f);
    for (double t : t_grid) {
        const Vec y = apply_fourier_multiplier(
            f, [&sym, t](int k) { return std::exp(t * sym(k)); });
        double worst = 0.0;
        int idx = -1;
        for (int i = 0; i < n; ++i)
            if (y[i] < worst) {
                worst = y[i];
                idx = i;
            }
        if (worst < floor && t >= w.t) {
            w.found = true;
            w.t = t;
            w.entry = worst;
            w.index = idx;
        }
    }

    // 2 = k^(2 ell + 1) has an integer solution only at ell = 0 (k = 2).
    w.cyclicity_excluded = true;
    const int p = 2 * ell + 1;
    for (int k = -3; k <= 3; ++k) {
        long long kp = 1;
        for (int i = 0; i < p && kp <= 4 && kp >= -4; ++i) kp *= k;
        if (kp == 2) w.cyclicity_excluded = false;
    }
    return w;
}

FormDomainReport check_form_domain_estimate(const GalleryOperator& op, double mu,
                                            const Thresholds& th) {
    const int n = op.matrix.n;
    const Vec& wts = op.frame.weights;
    for (int i = 0; i < n; ++i)
        if (std::fabs(op.frame.u[i] - op.frame.phi[i]) > 1e-12 * sup_norm(op.frame.u))
            throw InvalidParam("form-domain estimate needs phi = u");

    const double sym_scale = max_abs(op.matrix);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::fabs(wts[i] * op.matrix.at(i, j) - wts[j] * op.matrix.at(j, i)) >
                1e-8 * sym_scale)
                throw NotSymmetric();

    FormDomainReport rep;
    rep.mu = mu;
    const DenseMatrix R = resolvent(op.matrix, mu);
    rep.c_hat = phi_to_u_norm(R, op.frame);

    DenseMatrix M(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double mij = std::sqrt(wts[i]) * R.at(i, j) / std::sqrt(wts[j]);
            const double mji = std::sqrt(wts[j]) * R.at(j, i) / std::sqrt(wts[i]);
            M.at(i, j) = 0.5 * (mij + mji);
        }
    DenseMatrix V;
    const Vec eigs = jacobi_eigen_symmetric(M, V);
    for (double e : eigs)
        if (!(e > 0.0)) throw NotPositiveDefinite();

    // H = W^{-1/2} M^{1/2} W^{1/2}; then R = H*H.
    DenseMatrix H(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int k = 0; k < n; ++k) s += V.at(i, k) * std::sqrt(eigs[k]) * V.at(j, k);
            H.at(i, j) = s * std::sqrt(wts[j]) / std::sqrt(wts[i]);
        }
    rep.alpha = 0.0;
    rep.beta = 0.0;
    for (int i = 0; i < n; ++i) {
        double rowsum = 0.0;
        for (int j = 0; j < n; ++j) {
            const double h = std::fabs(H.at(i, j));
            rowsum += h;
            rep.beta = std::max(rep.beta, h / (op.frame.phi[j] * wts[j]));
        }
        rep.alpha = std::max(rep.alpha, rowsum / op.frame.u[i]);
    }
    rep.bound_ok = rep.c_hat <= rep.alpha * rep.beta * (1.0 + 1e-9);

    try {
        for (int k : {100, 200, 400}) {
            GalleryOperator at = rebuild_at(op, admissible_n(op.name, k));
            rep.ns.push_back(at.grid.n);
            rep.c_hats.push_back(phi_to_u_norm(resolvent(at.matrix, mu), at.frame));
        }
        const auto [lo, hi] = std::minmax_element(rep.c_hats.begin(), rep.c_hats.end());
        rep.stable = *hi <= *lo * (th.uniform_hi / th.uniform_lo);
        rep.single_mesh = false;
    } catch (const InvalidParam&) {
        rep.ns.clear();
        rep.c_hats.clear();
        rep.stable = false;
        rep.single_mesh = true;
    }
    rep.ok = rep.bound_ok && (rep.single_mesh || rep.stable);
    return rep;
}

double expansion_residual(const DenseMatrix& A, double mu, double mu0, int order) {
    if (order < 1) throw InvalidParam("expansion order must be >= 1");
    const DenseMatrix R = resolvent(A, mu);
    const DenseMatrix R0 = resolvent(A, mu0);
    const double delta = mu0 - mu;

    DenseMatrix sum(A.n);
    DenseMatrix R0k = identity_matrix(A.n);  // R0^k
    double dk = 1.0;                         // delta^k
    for (int k = 0; k < order; ++k) {
        R0k = matmul(R0k, R0);  // now R0^{k+1}
        sum = plus_scaled(sum, dk, R0k);
        dk *= delta;
    }
    const DenseMatrix tail = matmul(R0k, R);  // R0^order * R
    const DenseMatrix rhs = plus_scaled(sum, dk, tail);
    return max_abs(plus_scaled(R, -1.0, rhs)) / max_abs(R);
}

}  // namespace evlab
