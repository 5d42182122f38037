#pragma once

#include <map>
#include <string>
#include <vector>

#include "evlab/gallery.hpp"
#include "evlab/lattice.hpp"
#include "evlab/numerics.hpp"

// Verdict engine: spectral data assembly, mu-scans classifying where the
// resolvent dominates (or is dominated by) the rank-one frame, refinement
// studies separating mesh-uniform behaviour from divergence, and executable
// checks of the structural theorems the gallery operators instantiate.

namespace evlab {

// Empirical decision constants applied mechanically by every classifier and
// verdict below; callers may override per invocation.
struct Thresholds {
    double eps_cls_rel = 1e-9;     // classification band, relative to c-hat
    double uniform_lo = 0.8;       // margin stability band under refinement
    double uniform_hi = 1.25;
    double divergent_ratio = 1.4;  // c-hat growth per mesh doubling
};

// Margins within +-(eps_cls_rel * c-hat) never certify a sign.
double classification_threshold(const MarginReport& m, const Thresholds& th);

// Principal eigenpair plus the rank-one spectral projection
// P = right x left with <left, right> = 1, so P*P = P.
struct SpectralData {
    EigenPair pair;
    DenseMatrix projection;
    double gap = 0.0;    // distance to the nearest other spectral dip
    bool simple = true;  // false when another dip sits at numerical resolution
};

SpectralData build_spectral_data(const GalleryOperator& op);

// Sum of the continuum exponents, floored at one.
int pole_order_m(const GalleryOperator& op);

enum class MuClass { strong_positive, strong_negative, mixed, skipped_near_spectrum };
const char* mu_class_name(MuClass c);

struct ScanPoint {
    double mu = 0.0;
    MarginReport margins;
    double c_hat = 0.0;
    MuClass cls = MuClass::mixed;
};

// Window anchored at lambda0; width 0 encodes "empty".
struct Window {
    double lo = 0.0;
    double hi = 0.0;
    double width() const { return hi - lo; }
    bool empty() const { return width() <= 0.0; }
};

struct ScanReport {
    double lambda0 = 0.0;
    double gap = 0.0;
    double zone = 0.0;              // spectrum-proximity radius actually used
    std::vector<double> mu_values;  // classified points, ascending
    std::vector<ScanPoint> points;  // aligned with mu_values
    std::vector<double> skipped;    // near a sigma_min dip; never classified
    Window right_window;            // (lambda0, hi]: strong_positive run
    Window left_window;             // [lo, lambda0): strong_negative run
};

// Uniform grid over [mu_min, mu_max]; points near a sigma_min dip (or where
// the factorization degenerates) are skipped, the rest classified against
// op.frame. Windows are the maximal contiguous strong runs adjacent to
// lambda0.
ScanReport scan(const GalleryOperator& op, double mu_min, double mu_max, int steps,
                const Thresholds& th = {});

enum class RefinementVerdict { uniform, divergent, inconclusive };
const char* refinement_verdict_name(RefinementVerdict v);

struct RefinementRow {
    int n = 0;
    MarginReport margins;  // at the probe mu
    double c_hat = 0.0;
    double lambda0 = 0.0;      // eigenvalue at this mesh; anchors the windows
    double right_width = 0.0;  // windows of a short scan around lambda0
    double left_width = 0.0;
};

struct RefinementStudy {
    double probe_mu = 0.0;
    std::vector<RefinementRow> rows;  // ascending n
    RefinementVerdict verdict = RefinementVerdict::inconclusive;
};

// Rebuilds the named operator at every mesh in n_list and applies the
// Thresholds rules: uniform needs >= 4 meshes with both margins sign-stable
// and final/initial inside [uniform_lo, uniform_hi]; divergent needs c-hat
// growth >= divergent_ratio at every consecutive pair.
RefinementStudy refinement_study(const std::string& name,
                                 const std::map<std::string, double>& params,
                                 const std::vector<Edge>& edges, double probe_mu,
                                 const std::vector<int>& n_list,
                                 const Thresholds& th = {});

struct ExtensionRow {
    double mu = 0.0;
    int power = 1;
    double c_hat = 0.0;  // of R(mu)^power
    double bound = 0.0;  // constructive constant assembled from R(mu0) data
};

struct ExtensionReport {
    double mu0 = 0.0;
    double c_hat0 = 0.0;
    std::vector<ExtensionRow> rows;
    double max_ratio = 0.0;  // worst observed c_hat / bound
    bool ok = false;
};

// Two-sided domination survives shifting mu and taking powers: c-hat of
// R(mu)^n is checked against the bound obtained by factoring the outermost
// R(mu0) appearances out of R(mu)^n = R(mu0)(I+dR(mu)) R(mu)^{n-2}
// (I+dR(mu)) R(mu0), d = mu0-mu.
ExtensionReport check_two_sided_extension(const GalleryOperator& op, double mu0,
                                          const std::vector<double>& mu_list,
                                          int n_max_power, const Thresholds& th = {});

enum class Direction { left_lower, right_upper };

struct OneSidedRow {
    double mu = 0.0;
    int power = 1;
    double margin = 0.0;       // lower (left_lower) or upper (right_upper) margin
    double limit = 0.0;        // bound the margin must stay inside
    bool exploratory = false;  // direction-violating mu: reported, never asserted
};

struct OneSidedReport {
    Direction direction = Direction::left_lower;
    double K = 0.0;  // one-sided constant measured at mu0
    std::vector<OneSidedRow> rows;
    bool alternating_applicable = false;  // R(mu0) is entrywise nonpositive
    bool alternating_ok = false;          // (-1)^(n-1) R(mu0)^n stays below 0, n = 1..3
    bool ok = false;
    bool single_mesh = true;  // single-mesh evidence, not a uniformity certificate
};

// One-sided domination at mu0 extends along the allowed direction; powers up
// to 4 are kept inside composition bounds. Direction violations throw unless
// the operator family is direction-free (interval kind with both continuum
// exponents 1) or exploratory mode is requested.
OneSidedReport check_one_sided_extension(const GalleryOperator& op, double mu0,
                                         Direction direction,
                                         const std::vector<double>& mu_list,
                                         const Thresholds& th = {},
                                         bool exploratory = false);

struct OneSidedRefinement {
    std::vector<int> ns;
    std::vector<OneSidedReport> reports;
    bool all_ok = false;
    bool uniform_K = false;  // K(h) stays inside the uniform band
};

// Refinement-mode variant: reruns the one-sided check at every mesh; only
// this form upgrades "holds" to mesh-uniform evidence.
OneSidedRefinement check_one_sided_refined(const GalleryOperator& op, double mu0,
                                           Direction direction,
                                           const std::vector<double>& mu_list,
                                           const std::vector<int>& n_list,
                                           const Thresholds& th = {});

struct DecayReport {
    int m = 1;
    std::vector<double> mu;  // as given, approaching lambda0
    std::vector<double> c;   // phi->u distance of (mu-lambda0)^m R(mu)^m from P
    bool eventually_decreasing = false;
    bool converged = false;  // final < 1e-2 * initial
    bool ok = false;
};

// c(mu) -> 0 along the sequence: the scaled resolvent powers collapse onto
// the spectral projection.
DecayReport check_projection_convergence(const GalleryOperator& op, int m,
                                         const std::vector<double>& mu_sequence);

struct PowersProbe {
    double mu = 0.0;
    double margin = 0.0;
    bool ok = false;
};

struct PowersVerdict {
    int m = 1;
    std::vector<PowersProbe> right;  // lower margin of R(mu)^m > theta
    std::vector<PowersProbe> left;   // upper margin of (-1)^(m-1) R(mu)^m < -theta
    bool right_ok = false;
    bool left_ok = false;
    bool ok = false;
};

// R(mu)^m dominates the frame just right of lambda0 and, with the alternating
// sign, is dominated just left of it; probes at lambda0 +- min(gap,1)/k,
// k in {200, 100, 50}.
PowersVerdict check_powers_theorem(const GalleryOperator& op, const Thresholds& th = {});

struct CharacterizationVerdict {
    double mu1 = 0.0;
    bool window_exists = false;         // (i) anti-max window left of lambda0
    bool nonpositive_mu_exists = false; // (ii) some mu with R(mu) <= eps entrywise
    bool chat_stable = false;           // (iii) c-hat(R(mu1)) stable under refinement
    double chat_growth = 0.0;           // geometric-mean growth per mesh doubling
    ScanReport left_scan;
    bool consistent = false;  // the three equivalent conditions agree
    bool all_true = false;
};

// Three equivalent faces of the anti-maximum principle, evaluated
// independently; any split verdict is a failure of the equivalence.
// Precondition: R(mu1) entrywise nonnegative with mu1 > lambda0.
CharacterizationVerdict check_antimax_characterization(const GalleryOperator& op,
                                                       double mu1,
                                                       const Thresholds& th = {});

struct GroupWitness {
    int ell = 0;
    bool found = false;  // some grid t where e^{tA}f dips strictly negative
    double t = 0.0;      // largest such t
    double entry = 0.0;  // the offending value
    int index = -1;
    bool cyclicity_excluded = false;  // 2 != k^(2 ell + 1) for every integer k
};

// Evolves f through the exact multiplier e^{t * symbol} over t_grid and
// searches for a strictly negative entry (threshold 1e-6 * ||f||_sup); also
// reports the arithmetic obstruction to cyclic imaginary spectrum.
GroupWitness check_group_not_eventually_positive(int ell, int n,
                                                 const std::vector<double>& t_grid,
                                                 const Vec& f);

struct FormDomainReport {
    double mu = 0.0;
    double c_hat = 0.0;
    double alpha = 0.0;     // max_i sum_j |H_ij| / u_i, H the symmetric factor
    double beta = 0.0;      // max_ij |H_ij| / (phi_j w_j)
    bool bound_ok = false;  // c_hat <= alpha * beta
    std::vector<int> ns;    // refinement meshes; empty in single-mesh mode
    std::vector<double> c_hats;
    bool stable = false;
    bool single_mesh = true;
    bool ok = false;
};

// Symmetric operators: split R(mu) = H*H through the weighted square root and
// bound c-hat by the factor norms; c-hat is additionally required stable
// across meshes when the operator family is rebuildable.
FormDomainReport check_form_domain_estimate(const GalleryOperator& op, double mu,
                                            const Thresholds& th = {});

// Relative residual of the order-n expansion of R(mu) around R(mu0):
// R(mu) = sum_{k<n} d^k R(mu0)^{k+1} + d^n R(mu0)^n R(mu), d = mu0 - mu.
// An exact matrix identity; the residual is roundoff-sized at every order.
double expansion_residual(const DenseMatrix& A, double mu, double mu0, int order);

}  // namespace evlab
