#include "jfrf/wiener.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "jfrf/errors.hpp"

namespace jfrf {
namespace {

void check_hermitian_psd(const ComplexMatrix& r, const char* name) {
    const double scale = std::max(1.0, r.cwiseAbs().maxCoeff());
    if ((r - r.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
        throw InvalidArgument(std::string(name) + " is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (r + r.adjoint()),
                                                        Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().size() > 0 && solver.eigenvalues()(0) < -1e-8 * scale) {
        throw InvalidArgument(std::string(name) + " is not positive semidefinite");
    }
}

struct NormalEquations {
    ComplexMatrix m;
    ComplexVector c;
    double trace_xx = 0.0;
};

NormalEquations normal_equations(const SecondOrderStats& stats, const JointOperator& op,
                                 double alpha, double beta) {
    if (stats.vertices() != op.vertices() || stats.window() != op.window()) {
        throw InvalidArgument("statistics and operator dimensions differ");
    }
    const ComplexMatrix b = explicit_matrix(op, alpha, beta);
    const ComplexMatrix a = explicit_matrix(op, -alpha, -beta);
    const ComplexMatrix aha = a.adjoint() * a;
    const ComplexMatrix byb = b * stats.r_yy() * b.adjoint();
    const ComplexMatrix cross = a.adjoint() * stats.r_xy() * b.adjoint();

    NormalEquations eq;
    eq.m = aha.cwiseProduct(byb.transpose());
    eq.m = (0.5 * (eq.m + eq.m.adjoint())).eval();
    eq.c = cross.diagonal();
    eq.trace_xx = stats.r_xx.trace().real();
    return eq;
}

double objective_of(const NormalEquations& eq, const ComplexVector& h) {
    return eq.trace_xx - 2.0 * h.dot(eq.c).real() + h.dot(eq.m * h).real();
}

}  // namespace

void SecondOrderStats::validate() const {
    const Index n = g_graph.rows();
    const Index d = g_time.rows();
    if (n == 0 || d == 0 || g_graph.cols() != n || g_time.cols() != d) {
        throw InvalidArgument("G_G and G_T must be non-empty square matrices");
    }
    const Index nd = n * d;
    for (const ComplexMatrix* r : {&r_xx, &r_nn, &r_xn, &r_nx}) {
        if (r->rows() != nd || r->cols() != nd) {
            throw InvalidArgument("covariance matrices must be " + std::to_string(nd) + "x" +
                                  std::to_string(nd));
        }
    }
    check_hermitian_psd(r_xx, "r_xx");
    check_hermitian_psd(r_nn, "r_nn");
    const double scale = std::max(1.0, r_xn.cwiseAbs().maxCoeff());
    if ((r_nx - r_xn.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
        throw InvalidArgument("r_nx must equal r_xn^H");
    }
}

ComplexMatrix SecondOrderStats::channel() const { return kron(g_time.transpose(), g_graph); }

ComplexMatrix SecondOrderStats::r_yy() const {
    const ComplexMatrix g = channel();
    return g * r_xx * g.adjoint() + g * r_xn + r_nx * g.adjoint() + r_nn;
}

ComplexMatrix SecondOrderStats::r_xy() const { return r_xx * channel().adjoint() + r_xn; }

ComplexMatrix observe(const ComplexMatrix& x, const ComplexMatrix& n, const SecondOrderStats& stats) {
    if (x.rows() != stats.vertices() || x.cols() != stats.window() || n.rows() != x.rows() ||
        n.cols() != x.cols()) {
        throw InvalidArgument("observe: signal, noise and channel shapes do not conform");
    }
    return stats.g_graph * x * stats.g_time + n;
}

DiagonalFilter optimal_diagonal_filter(const SecondOrderStats& stats, const JointOperator& op,
                                       double alpha, double beta, const WienerOptions& options) {
    if (!(options.regularization >= 0.0)) throw InvalidArgument("regularization must be >= 0");
    NormalEquations eq = normal_equations(stats, op, alpha, beta);
    ComplexMatrix system = eq.m;
    system.diagonal().array() += options.regularization;

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> spectrum(system, Eigen::EigenvaluesOnly);
    const double lo = spectrum.eigenvalues()(0);
    const double hi = spectrum.eigenvalues()(spectrum.eigenvalues().size() - 1);
    const double condition = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
    if (!(condition < options.max_condition)) {
        std::ostringstream msg;
        msg << "Wiener normal equations are rank deficient at (alpha, beta) = (" << alpha << ", "
            << beta << "), condition " << condition;
        throw RankDeficient(msg.str(), condition);
    }

    DiagonalFilter filter;
    filter.coefficients = system.ldlt().solve(eq.c);
    filter.alpha = alpha;
    filter.beta = beta;
    filter.objective = objective_of(eq, filter.coefficients);
    return filter;
}

double wiener_objective(const SecondOrderStats& stats, const JointOperator& op, double alpha,
                        double beta, const ComplexVector& coefficients) {
    const NormalEquations eq = normal_equations(stats, op, alpha, beta);
    if (coefficients.size() != eq.c.size()) throw InvalidArgument("filter length mismatch");
    return objective_of(eq, coefficients);
}

ComplexMatrix apply_filter(const DiagonalFilter& filter, const JointOperator& op,
                           const ComplexMatrix& y) {
    if (filter.coefficients.size() != op.vertices() * op.window()) {
        throw InvalidArgument("filter length does not match the operator");
    }
    const ComplexMatrix h = unvec(filter.coefficients, op.vertices(), op.window());
    return inverse(op, h.cwiseProduct(forward(op, y, filter.alpha, filter.beta)), filter.alpha,
                   filter.beta);
}

GridSearchResult grid_search(const SecondOrderStats& stats, const JointOperator& op,
                             std::vector<double> alphas, std::vector<double> betas,
                             const WienerOptions& options) {
    if (alphas.empty() || betas.empty()) throw InvalidArgument("order grids must be non-empty");
    std::sort(alphas.begin(), alphas.end());
    std::sort(betas.begin(), betas.end());

    GridSearchResult result;
    bool found = false;
    for (double a : alphas) {
        for (double b : betas) {
            GridCell cell{a, b, false, 0.0};
            try {
                DiagonalFilter f = optimal_diagonal_filter(stats, op, a, b, options);
                cell.ok = true;
                cell.objective = f.objective;
                const double slack = 1e-12 * std::max(1.0, std::abs(result.best.objective));
                if (!found || f.objective < result.best.objective - slack) {
                    result.best = std::move(f);
                    found = true;
                }
            } catch (const RankDeficient&) {
            }
            result.cells.push_back(cell);
        }
    }
    if (!found) {
        throw RankDeficient("Wiener normal equations are rank deficient at every grid point",
                            std::numeric_limits<double>::infinity());
    }
    return result;
}

std::vector<double> default_order_grid() {
    std::vector<double> grid;
    for (int i = 0; i <= 20; ++i) grid.push_back(0.1 * i);
    return grid;
}

SecondOrderStats empirical_stats(std::span<const RealMatrix> clean, std::span<const RealMatrix> noisy,
                                 const ComplexMatrix& g_graph, const ComplexMatrix& g_time) {
    if (clean.empty()) throw InvalidArgument("empirical_stats: no samples");
    if (clean.size() != noisy.size()) {
        throw InvalidArgument("empirical_stats: clean and noisy sample counts differ");
    }
    const Index n = g_graph.rows();
    const Index d = g_time.rows();
    const Index nd = n * d;

    SecondOrderStats stats;
    stats.g_graph = g_graph;
    stats.g_time = g_time;
    stats.r_xx = ComplexMatrix::Zero(nd, nd);
    stats.r_nn = ComplexMatrix::Zero(nd, nd);
    stats.r_xn = ComplexMatrix::Zero(nd, nd);
    for (std::size_t s = 0; s < clean.size(); ++s) {
        if (clean[s].rows() != n || clean[s].cols() != d || noisy[s].rows() != n ||
            noisy[s].cols() != d) {
            throw InvalidArgument("empirical_stats: sample " + std::to_string(s) +
                                  " has the wrong shape");
        }
        const ComplexMatrix x = clean[s].cast<Complex>();
        const ComplexMatrix noise = noisy[s].cast<Complex>() - g_graph * x * g_time;
        const ComplexVector xv = vec(x);
        const ComplexVector nv = vec(noise);
        stats.r_xx += xv * xv.adjoint();
        stats.r_nn += nv * nv.adjoint();
        stats.r_xn += xv * nv.adjoint();
    }
    const double inv = 1.0 / static_cast<double>(clean.size());
    stats.r_xx = ((0.5 * inv) * (stats.r_xx + stats.r_xx.adjoint())).eval();
    stats.r_nn = ((0.5 * inv) * (stats.r_nn + stats.r_nn.adjoint())).eval();
    stats.r_xn *= inv;
    stats.r_nx = stats.r_xn.adjoint();
    return stats;
}

}  // namespace jfrf
