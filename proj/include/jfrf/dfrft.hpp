#pragma once

#include <Eigen/Core>

#include "jfrf/types.hpp"

namespace jfrf {

/// Unitary DFT, entries exp(-2 pi j m n / d) / sqrt(d).
ComplexMatrix unitary_dft(Index d);

/// Discrete fractional Fourier transform F^beta = exp(beta T) built on the
/// discrete Hermite-Gaussian eigenvectors of the DFT-commuting matrix
/// S = (circular second difference) + diag(2 cos(2 pi n / d) - 2).
///
/// S is split into its even and odd subspaces; within each, eigenvectors are
/// ordered by decreasing eigenvalue and receive Hermite orders 0, 2, 4, ...
/// and 1, 3, 5, ... respectively. The resulting order set is {0, ..., d-2}
/// plus d-1 (odd d) or d (even d), and T has eigenvalues -j (pi / 2) n_k.
class DfrftOperator {
public:
    explicit DfrftOperator(Index d);

    Index size() const noexcept { return basis_.rows(); }
    /// Real orthonormal; columns sorted by Hermite order.
    const RealMatrix& hermite_basis() const noexcept { return basis_; }
    const Eigen::VectorXi& hermite_indices() const noexcept { return orders_; }
    ComplexVector generator_eigenvalues() const;

    /// Dense generator V diag(-j pi n / 2) V^T.
    ComplexMatrix generator() const;

    /// V diag(exp(-j pi n beta / 2)) V^T; exactly the identity at beta = 0.
    ComplexMatrix fractional_matrix(double beta) const;
    /// T F^beta.
    ComplexMatrix fractional_derivative(double beta) const;

private:
    ComplexMatrix in_basis(const ComplexVector& values) const;

    RealMatrix basis_;
    Eigen::VectorXi orders_;
};

DfrftOperator build_dfrft_operator(Index d);

}  // namespace jfrf
