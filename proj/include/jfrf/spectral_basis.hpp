#pragma once

#include "jfrf/types.hpp"

namespace jfrf {

inline constexpr double kDefaultKappaMax = 1e8;

/// Diagonalizing decomposition Z = V diag(lambda) V^{-1}.
///
/// Eigen-pairs are sorted by ascending real part, then ascending imaginary
/// part. Each eigenvector is phase-normalized so its first component of
/// magnitude above 1e-8 is real and positive; when V is real and det(V) < 0
/// the last column is negated so that V^{-1} has no forced eigenvalue at -1.
class SpectralBasis {
public:
    const ComplexMatrix& eigenvectors() const noexcept { return vectors_; }
    const ComplexMatrix& eigenvector_inverse() const noexcept { return inverse_; }
    const ComplexVector& eigenvalues() const noexcept { return values_; }
    double condition_estimate() const noexcept { return condition_; }
    /// True when the decomposed matrix was Hermitian (orthonormal eigenvectors).
    bool symmetric_source() const noexcept { return hermitian_; }
    /// True when the eigenvectors form a unitary matrix (Hermitian or normal source).
    bool unitary() const noexcept { return unitary_; }
    Index size() const noexcept { return values_.size(); }

    /// V diag(lambda) V^{-1}.
    ComplexMatrix reconstruct() const;

private:
    friend SpectralBasis eigendecompose(const ComplexMatrix& z, double kappa_max);

    ComplexMatrix vectors_;
    ComplexMatrix inverse_;
    ComplexVector values_;
    double condition_ = 1.0;
    bool hermitian_ = false;
    bool unitary_ = false;
};

/// Throws IllConditioned when the eigenvector condition number exceeds
/// kappa_max or the decomposition does not reconstruct z to 1e-8.
SpectralBasis eigendecompose(const ComplexMatrix& z, double kappa_max = kDefaultKappaMax);
SpectralBasis eigendecompose(const RealMatrix& z, double kappa_max = kDefaultKappaMax);

/// The graph Fourier transform F_G = V^{-1}.
ComplexMatrix gft_matrix(const SpectralBasis& basis);

/// Principal logarithms of the basis eigenvalues (imaginary part in (-pi, pi]).
/// Throws SingularMatrix for a zero eigenvalue and BranchAmbiguity for an
/// eigenvalue within 1e-9 radians of the negative real axis.
ComplexVector principal_log_eigenvalues(const SpectralBasis& basis);

/// Principal matrix logarithm of m evaluated through its supplied basis.
ComplexMatrix principal_log(const ComplexMatrix& m, const SpectralBasis& basis);

/// V diag(exp(scale * generator_eigenvalues)) V^{-1}.
ComplexMatrix exp_in_basis(const ComplexVector& generator_eigenvalues, const SpectralBasis& basis,
                           double scale);

/// Same similarity with arbitrary spectral values: V diag(values) V^{-1}.
ComplexMatrix apply_spectral(const ComplexVector& values, const SpectralBasis& basis);

}  // namespace jfrf
