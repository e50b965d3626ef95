#include "jfrf/spectral_basis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

#include "jfrf/errors.hpp"

namespace jfrf {
namespace {

constexpr double kReconstructTol = 1e-8;
constexpr double kBranchTol = 1e-9;
constexpr double kPhaseTol = 1e-8;

bool is_hermitian(const ComplexMatrix& z) {
    const double scale = std::max(1.0, z.cwiseAbs().maxCoeff());
    return (z - z.adjoint()).cwiseAbs().maxCoeff() <= 1e-13 * scale;
}

bool is_normal(const ComplexMatrix& z) {
    const double scale = std::max(1.0, z.squaredNorm());
    return (z * z.adjoint() - z.adjoint() * z).norm() <= 1e-11 * scale;
}

// Real normal matrix: the real Schur form is block diagonal with 1x1 blocks
// and 2x2 blocks [a b; -b a], whose eigenvectors are (u1 -+ j u2) / sqrt 2.
// Returns false when T is not of that shape so the caller can fall back.
bool real_normal_eigen(const RealMatrix& z, ComplexVector& values, ComplexMatrix& vectors) {
    Eigen::RealSchur<RealMatrix> schur(z);
    if (schur.info() != Eigen::Success) return false;
    const RealMatrix& t = schur.matrixT();
    const RealMatrix& u = schur.matrixU();
    const Index n = z.rows();
    const double tol = 1e-10 * std::max(1.0, z.norm());
    values.resize(n);
    vectors.resize(n, n);
    RealMatrix off = t;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (Index k = 0; k < n;) {
        if (k + 1 < n && t(k + 1, k) != 0.0) {
            const double a = 0.5 * (t(k, k) + t(k + 1, k + 1));
            const double b = 0.5 * (t(k, k + 1) - t(k + 1, k));
            if (std::abs(t(k, k) - t(k + 1, k + 1)) > tol || std::abs(t(k, k + 1) + t(k + 1, k)) > tol) return false;
            values(k) = Complex(a, b);
            values(k + 1) = Complex(a, -b);
            vectors.col(k) = (u.col(k).cast<Complex>() + kJ * u.col(k + 1).cast<Complex>()) * inv_sqrt2;
            vectors.col(k + 1) = (u.col(k).cast<Complex>() - kJ * u.col(k + 1).cast<Complex>()) * inv_sqrt2;
            off.block(k, k, 2, 2).setZero();
            k += 2;
        } else {
            values(k) = t(k, k);
            vectors.col(k) = u.col(k).cast<Complex>();
            off(k, k) = 0.0;
            k += 1;
        }
    }
    return off.norm() <= tol;
}

void sort_pairs(ComplexVector& values, ComplexMatrix& vectors) {
    std::vector<Index> order(static_cast<std::size_t>(values.size()));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
        if (values(a).real() != values(b).real()) return values(a).real() < values(b).real();
        return values(a).imag() < values(b).imag();
    });
    ComplexVector sorted_values(values.size());
    ComplexMatrix sorted_vectors(vectors.rows(), vectors.cols());
    for (Index k = 0; k < values.size(); ++k) {
        sorted_values(k) = values(order[static_cast<std::size_t>(k)]);
        sorted_vectors.col(k) = vectors.col(order[static_cast<std::size_t>(k)]);
    }
    values = std::move(sorted_values);
    vectors = std::move(sorted_vectors);
}

void normalize_phases(ComplexMatrix& vectors) {
    for (Index k = 0; k < vectors.cols(); ++k) {
        auto col = vectors.col(k);
        const double norm = col.norm();
        if (!(norm > 0.0)) continue;
        for (Index i = 0; i < col.size(); ++i) {
            const double mag = std::abs(col(i));
            if (mag > kPhaseTol * norm) {
                col *= std::conj(col(i)) / mag;
                col(i) = Complex(col(i).real(), 0.0);
                break;
            }
        }
    }
}

// Negate the last column of a real eigenvector matrix with negative
// determinant; otherwise V^{-1} necessarily has -1 as an eigenvalue.
void fix_orientation(ComplexMatrix& vectors) {
    if (vectors.cols() == 0 || vectors.imag().cwiseAbs().maxCoeff() > 1e-12) return;
    const double det = vectors.real().determinant();
    if (det < 0.0) vectors.col(vectors.cols() - 1) *= -1.0;
}

}  // namespace

ComplexMatrix SpectralBasis::reconstruct() const { return apply_spectral(values_, *this); }

SpectralBasis eigendecompose(const ComplexMatrix& z, double kappa_max) {
    if (z.rows() != z.cols() || z.rows() == 0) {
        throw InvalidArgument("eigendecompose needs a non-empty square matrix");
    }
    if (!z.allFinite()) throw InvalidArgument("eigendecompose: matrix has non-finite entries");
    if (!(kappa_max > 0.0)) throw InvalidArgument("kappa_max must be positive");

    const Index n = z.rows();
    SpectralBasis basis;

    if (is_hermitian(z)) {
        const ComplexMatrix h = 0.5 * (z + z.adjoint());
        if (h.imag().cwiseAbs().maxCoeff() == 0.0) {
            Eigen::SelfAdjointEigenSolver<RealMatrix> solver(h.real());
            basis.values_ = solver.eigenvalues().cast<Complex>();
            basis.vectors_ = solver.eigenvectors().cast<Complex>();
        } else {
            Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
            basis.values_ = solver.eigenvalues().cast<Complex>();
            basis.vectors_ = solver.eigenvectors();
        }
        basis.hermitian_ = true;
        basis.unitary_ = true;
    }
    const bool normal = !basis.hermitian_ && is_normal(z);
    if (normal && z.imag().cwiseAbs().maxCoeff() == 0.0) {
        basis.unitary_ = real_normal_eigen(z.real(), basis.values_, basis.vectors_);
    }
    if (normal && !basis.unitary_) {
        Eigen::ComplexSchur<ComplexMatrix> schur(z);
        const ComplexMatrix& t = schur.matrixT();
        const double off = t.triangularView<Eigen::StrictlyUpper>().toDenseMatrix().norm();
        if (off <= 1e-10 * std::max(1.0, z.norm())) {
            basis.values_ = t.diagonal();
            basis.vectors_ = schur.matrixU();
            basis.unitary_ = true;
        }
    }
    if (!basis.unitary_) {
        Eigen::ComplexEigenSolver<ComplexMatrix> solver(z);
        if (solver.info() != Eigen::Success) {
            throw IllConditioned("eigendecompose: eigensolver did not converge",
                                 std::numeric_limits<double>::infinity());
        }
        basis.values_ = solver.eigenvalues();
        basis.vectors_ = solver.eigenvectors();
    }

    sort_pairs(basis.values_, basis.vectors_);
    normalize_phases(basis.vectors_);
    fix_orientation(basis.vectors_);

    if (basis.unitary_) {
        basis.inverse_ = basis.vectors_.adjoint();
        basis.condition_ = 1.0;
    } else {
        Eigen::JacobiSVD<ComplexMatrix> svd(basis.vectors_);
        const auto& sv = svd.singularValues();
        const double smin = sv(sv.size() - 1);
        basis.condition_ = smin > 0.0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
        if (!(basis.condition_ <= kappa_max)) {
            std::ostringstream msg;
            msg << "eigenvector matrix is ill-conditioned (condition estimate " << basis.condition_
                << " > " << kappa_max << ")";
            throw IllConditioned(msg.str(), basis.condition_);
        }
        basis.inverse_ = basis.vectors_.fullPivLu().inverse();
    }

    const double identity_err =
        (basis.vectors_ * basis.inverse_ - ComplexMatrix::Identity(n, n)).norm() /
        std::sqrt(static_cast<double>(n));
    const double recon_err = relative_error(basis.reconstruct(), z);
    if (!(identity_err <= kReconstructTol) || !(recon_err <= kReconstructTol)) {
        std::ostringstream msg;
        msg << "eigendecomposition does not reconstruct its input (relative error " << recon_err
            << ", condition estimate " << basis.condition_ << ")";
        throw IllConditioned(msg.str(), basis.condition_);
    }
    return basis;
}

SpectralBasis eigendecompose(const RealMatrix& z, double kappa_max) {
    return eigendecompose(ComplexMatrix(z.cast<Complex>()), kappa_max);
}

ComplexMatrix gft_matrix(const SpectralBasis& basis) { return basis.eigenvector_inverse(); }

ComplexVector principal_log_eigenvalues(const SpectralBasis& basis) {
    const ComplexVector& values = basis.eigenvalues();
    const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
    ComplexVector logs(values.size());
    for (Index k = 0; k < values.size(); ++k) {
        const Complex lambda = values(k);
        if (!(std::abs(lambda) > 1e-14 * scale)) {
            throw SingularMatrix("matrix logarithm: eigenvalue " + std::to_string(k) + " is zero");
        }
        if (lambda.real() < 0.0 && kPi - std::abs(std::arg(lambda)) <= kBranchTol) {
            std::ostringstream msg;
            msg << "matrix logarithm: eigenvalue " << k << " = " << lambda
                << " lies on the negative real axis (principal branch is ambiguous)";
            throw BranchAmbiguity(msg.str());
        }
        logs(k) = std::log(lambda);
    }
    return logs;
}

ComplexMatrix principal_log(const ComplexMatrix& m, const SpectralBasis& basis) {
    if (m.rows() != basis.size() || m.cols() != basis.size()) {
        throw InvalidArgument("principal_log: basis size does not match the matrix");
    }
    if (relative_error(basis.reconstruct(), m) > kReconstructTol) {
        throw InvalidArgument("principal_log: supplied basis does not decompose the matrix");
    }
    return apply_spectral(principal_log_eigenvalues(basis), basis);
}

ComplexMatrix exp_in_basis(const ComplexVector& generator_eigenvalues, const SpectralBasis& basis,
                           double scale) {
    if (generator_eigenvalues.size() != basis.size()) {
        throw InvalidArgument("exp_in_basis: eigenvalue count does not match the basis");
    }
    return apply_spectral((scale * generator_eigenvalues).array().exp().matrix(), basis);
}

ComplexMatrix apply_spectral(const ComplexVector& values, const SpectralBasis& basis) {
    return basis.eigenvectors() * values.asDiagonal() * basis.eigenvector_inverse();
}

}  // namespace jfrf
