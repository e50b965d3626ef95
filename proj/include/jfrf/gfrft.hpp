#pragma once

#include "jfrf/spectral_basis.hpp"
#include "jfrf/types.hpp"

namespace jfrf {

/// Hyper-differential graph fractional Fourier transform.
///
/// Starting from F_G = V^{-1} of a shift operator, the generator is
///
///     D2 = (1 / 2pi) ((2j / pi) log(F_G) + I / 2)
///     T  = -j (pi / 2) (pi (D2 + F_G D2 F_G^{-1}) - I / 2)
///
/// and F_G^alpha = exp(alpha T). Both D2 and its conjugate by F_G are
/// functions of F_G, so T reduces algebraically to the principal log of F_G;
/// the spectral representation stores that reduced form while generator()
/// assembles the literal expression densely.
class GfrftOperator {
public:
    explicit GfrftOperator(const SpectralBasis& shift_basis,
                           double kappa_max = kDefaultKappaMax);

    Index size() const noexcept { return gft_.rows(); }
    const ComplexMatrix& gft() const noexcept { return gft_; }
    /// Eigendecomposition of F_G itself (not of the shift operator).
    const SpectralBasis& transform_basis() const noexcept { return transform_basis_; }
    const ComplexVector& generator_eigenvalues() const noexcept { return generator_values_; }

    /// Dense T assembled term by term from D2 and F_G D2 F_G^{-1}.
    ComplexMatrix generator() const;

    /// exp(alpha T); exactly the identity at alpha = 0.
    ComplexMatrix fractional_matrix(double alpha) const;
    /// T exp(alpha T).
    ComplexMatrix fractional_derivative(double alpha) const;

private:
    ComplexMatrix gft_;
    ComplexMatrix gft_inverse_;
    SpectralBasis transform_basis_;
    ComplexVector generator_values_;
};

GfrftOperator build_gfrft_operator(const SpectralBasis& shift_basis,
                                   double kappa_max = kDefaultKappaMax);

}  // namespace jfrf
