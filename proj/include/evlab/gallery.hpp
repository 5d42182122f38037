#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "evlab/lattice.hpp"
#include "evlab/numerics.hpp"

// Operator catalogue: each entry packages a dense discretization with its
// comparison frame (u, phi, weights), principal eigenvalue, continuum
// exponents, grid metadata, and the predicted verdicts the test suite checks
// computed classifications against. Builders are pure; results are treated as
// immutable.

namespace evlab {

enum class Verdict { holds, fails, untested };
const char* verdict_name(Verdict v);

enum class GridKind { interval, graph, delay_product, fourier };
const char* grid_kind_name(GridKind k);

struct PredictedVerdicts {
    Verdict uniform_max = Verdict::untested;
    Verdict uniform_antimax = Verdict::untested;
    std::string notes;
};

struct GridMeta {
    GridKind kind = GridKind::interval;
    int n = 0;                  // number of unknowns
    std::vector<double> h;      // one mesh width, or one per edge for graphs
    std::vector<double> coords; // node coordinate (arc position on its edge)
};

enum class IntervalBc { dirichlet, neumann, periodic };

struct Edge {
    int a = 0;
    int b = 0;
    double length = 1.0;
};

struct GalleryOperator {
    std::string name;
    DenseMatrix matrix;
    RankOneFrame frame;
    double lambda0 = 0.0; // eigensolver shift; analytic when known, probed otherwise
    int continuum_m1 = 1;
    int continuum_m2 = 1;
    GridMeta grid;
    PredictedVerdicts predicted;
    std::map<std::string, double> params;
    std::vector<Edge> edges;  // graph topology, kept so the operator can be rebuilt
};

// Second-order 3-point Laplacian on (0,1). Dirichlet: interior nodes,
// h = 1/(n+1), frame u = phi = sin(pi x). Neumann: h = 1/(n-1) with
// ghost-point reflection rows. Periodic: h = 1/n circulant. n >= 3.
GalleryOperator build_interval_laplacian(IntervalBc bc, int n);

// Laplacian on (alpha, beta) with boundary rows coupling the endpoint normal
// derivatives through B (row-major b11,b12,b21,b22); B = 0 reduces to the
// Neumann operator. lambda0 is located by a sigma_min probe plus inverse
// iteration. n >= 3.
GalleryOperator build_nonlocal_laplacian(const std::array<double, 4>& B,
                                         double alpha, double beta, int n);

// Kirchhoff Laplacian on a connected metric multigraph: one unknown per
// vertex, uniform per-edge grids, vertex rows enforce flux balance and are
// scaled to keep the matrix symmetric under the trapezoidal weights.
GalleryOperator build_graph_laplacian(const std::vector<Edge>& edges,
                                      int n_per_unit);

// Real Fourier-multiplier matrix of d^(2l+1)/dx^(2l+1) on [0,1) periodic;
// n odd, n >= 2(ell+2)+1.
GalleryOperator build_odd_order(int ell, int n);

// Shift generator on the history interval [-2,0] coupled to a scalar whose
// derivative is c*(int_{-2}^{-1} f - int_{-1}^{0} f + f(-2) - f(0)).
// Slots 0..n-1 hold f at -2 + j h (h = 2/n), slot n holds x = f(0).
// c > 0, n even, n >= 16.
GalleryOperator build_delay_operator(double c, int n);

// CLI vocabulary: dirichlet, neumann, periodic, nonlocal_symmetric,
// thermostat (beta), graph (edges, n_per_unit), odd_order (ell), delay (c).
GalleryOperator make_named_operator(const std::string& name, int n,
                                    const std::map<std::string, double>& params,
                                    const std::vector<Edge>& edges);

// Default mesh parameter for a named operator (odd_order and delay have
// parity/size constraints that the generic default violates).
int default_n(const std::string& name);

// make_named_operator with the mesh parameter routed correctly: graphs take n
// as the per-unit density, everything else as the unknown count.
GalleryOperator build_named_at(const std::string& name,
                               const std::map<std::string, double>& params,
                               const std::vector<Edge>& edges, int n);

// Same operator family at a different mesh; identity comes from name, params
// and edges.
GalleryOperator rebuild_at(const GalleryOperator& op, int n);

// Nearest mesh parameter satisfying the family's parity constraints.
int admissible_n(const std::string& name, int n);

// Multiplier symbol i*(-1)^ell*(2 pi k)^(2 ell+1) of the odd-order operator.
Symbol odd_order_symbol(int ell);

}  // namespace evlab
