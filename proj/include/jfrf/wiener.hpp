#pragma once

#include <span>
#include <vector>

#include "jfrf/jfrft.hpp"
#include "jfrf/types.hpp"

namespace jfrf {

/// Second-order description of the observation model Y = G_G X G_T + N over
/// column-major vectorized signals of length ND.
struct SecondOrderStats {
    ComplexMatrix r_xx;  // E[x x^H]
    ComplexMatrix r_nn;  // E[n n^H]
    ComplexMatrix r_xn;  // E[x n^H]
    ComplexMatrix r_nx;  // E[n x^H]
    ComplexMatrix g_graph;
    ComplexMatrix g_time;

    Index vertices() const noexcept { return g_graph.rows(); }
    Index window() const noexcept { return g_time.rows(); }

    /// Shapes, Hermitian symmetry, PSD-ness (to -1e-8) and r_nx = r_xn^H.
    void validate() const;

    /// G_T^T (x) G_G.
    ComplexMatrix channel() const;
    ComplexMatrix r_yy() const;
    ComplexMatrix r_xy() const;
};

struct DiagonalFilter {
    ComplexVector coefficients;  // length ND, column-major over (vertex, time)
    double alpha = 0.0;
    double beta = 0.0;
    double objective = 0.0;  // expected squared error achieved
};

struct WienerOptions {
    double regularization = 0.0;    // added to the normal-equation diagonal
    double max_condition = 1e12;    // above this the system is rank deficient
};

/// G_G X G_T + N.
ComplexMatrix observe(const ComplexMatrix& x, const ComplexMatrix& n, const SecondOrderStats& stats);

/// Minimizes E||F_J^{-a,-b} diag(h) F_J^{a,b} y - x||^2 over h via the
/// normal equations M h = c with
///     M_kl = (A^H A)_kl (B R_yy B^H)_lk,   c_k = (A^H R_xy B^H)_kk,
/// A = F_J^{-a,-b}, B = F_J^{a,b}. Throws RankDeficient if cond(M) is too large.
DiagonalFilter optimal_diagonal_filter(const SecondOrderStats& stats, const JointOperator& op,
                                       double alpha, double beta, const WienerOptions& options = {});

/// Expected squared error tr(R_xx) - 2 Re(h^H c) + h^H M h for any h.
double wiener_objective(const SecondOrderStats& stats, const JointOperator& op, double alpha,
                        double beta, const ComplexVector& coefficients);

ComplexMatrix apply_filter(const DiagonalFilter& filter, const JointOperator& op,
                           const ComplexMatrix& y);

struct GridCell {
    double alpha = 0.0;
    double beta = 0.0;
    bool ok = false;
    double objective = 0.0;
};

struct GridSearchResult {
    DiagonalFilter best;
    std::vector<GridCell> cells;  // sorted by alpha, then beta
};

/// Exhaustive search; ties (relative 1e-12) resolve to the smallest alpha, then beta.
GridSearchResult grid_search(const SecondOrderStats& stats, const JointOperator& op,
                             std::vector<double> alphas, std::vector<double> betas,
                             const WienerOptions& options = {});

/// 0, 0.1, ..., 2.0
std::vector<double> default_order_grid();

/// Sample second moments over vectorized samples with n = y - G_G x G_T,
/// Hermitian-symmetrized.
SecondOrderStats empirical_stats(std::span<const RealMatrix> clean, std::span<const RealMatrix> noisy,
                                 const ComplexMatrix& g_graph, const ComplexMatrix& g_time);

}  // namespace jfrf
