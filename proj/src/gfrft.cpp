#include "jfrf/gfrft.hpp"

#include <cmath>

#include "jfrf/errors.hpp"

namespace jfrf {

GfrftOperator::GfrftOperator(const SpectralBasis& shift_basis, double kappa_max)
    : gft_(gft_matrix(shift_basis)),
      gft_inverse_(shift_basis.eigenvectors()),
      transform_basis_(eigendecompose(gft_, kappa_max)),
      generator_values_(principal_log_eigenvalues(transform_basis_)) {}

ComplexMatrix GfrftOperator::generator() const {
    const Index n = size();
    const ComplexMatrix identity = ComplexMatrix::Identity(n, n);
    const ComplexMatrix log_gft = apply_spectral(generator_values_, transform_basis_);
    const ComplexMatrix d2 = (1.0 / (2.0 * kPi)) * ((2.0 * kJ / kPi) * log_gft + 0.5 * identity);
    const ComplexMatrix conj_d2 = gft_ * d2 * gft_inverse_;
    return (-kJ * (kPi / 2.0)) * (kPi * (d2 + conj_d2) - 0.5 * identity);
}

ComplexMatrix GfrftOperator::fractional_matrix(double alpha) const {
    if (!std::isfinite(alpha)) throw InvalidArgument("GFRFT order must be finite");
    if (alpha == 0.0) return ComplexMatrix::Identity(size(), size());
    return exp_in_basis(generator_values_, transform_basis_, alpha);
}

ComplexMatrix GfrftOperator::fractional_derivative(double alpha) const {
    if (!std::isfinite(alpha)) throw InvalidArgument("GFRFT order must be finite");
    const ComplexVector values =
        generator_values_.cwiseProduct((alpha * generator_values_).array().exp().matrix());
    return apply_spectral(values, transform_basis_);
}

GfrftOperator build_gfrft_operator(const SpectralBasis& shift_basis, double kappa_max) {
    return GfrftOperator(shift_basis, kappa_max);
}

}  // namespace jfrf
