#include "jfrf/dfrft.hpp"

#include <cmath>
#include <vector>

#include "jfrf/errors.hpp"

namespace jfrf {
namespace {

// Eigenvectors of the restriction of s to span(sub), returned in the full
// space, ordered by decreasing eigenvalue.
RealMatrix subspace_eigenvectors(const RealMatrix& s, const RealMatrix& sub) {
    if (sub.cols() == 0) return RealMatrix(s.rows(), 0);
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(sub.transpose() * s * sub);
    const RealMatrix ascending = sub * solver.eigenvectors();
    return ascending.rowwise().reverse();
}

}  // namespace

ComplexMatrix unitary_dft(Index d) {
    if (d < 1) throw InvalidArgument("DFT size must be positive");
    ComplexMatrix f(d, d);
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (Index m = 0; m < d; ++m) {
        for (Index n = 0; n < d; ++n) {
            // reduce m*n mod d first so the phase stays accurate
            const double phase = -2.0 * kPi * static_cast<double>((m * n) % d) / static_cast<double>(d);
            f(m, n) = std::polar(scale, phase);
        }
    }
    return f;
}

DfrftOperator::DfrftOperator(Index d) {
    if (d < 1) throw InvalidArgument("DFRFT size must be positive");

    RealMatrix s = RealMatrix::Zero(d, d);
    for (Index n = 0; n < d; ++n) {
        s(n, n) += 2.0 * std::cos(2.0 * kPi * static_cast<double>(n) / static_cast<double>(d)) - 4.0;
        s(n, (n + 1) % d) += 1.0;
        s(n, (n + d - 1) % d) += 1.0;
    }

    std::vector<RealVector> even_cols;
    std::vector<RealVector> odd_cols;
    const double h = 1.0 / std::sqrt(2.0);
    for (Index n = 0; n < d; ++n) {
        const Index m = (d - n) % d;
        if (n == m) {
            RealVector e = RealVector::Zero(d);
            e(n) = 1.0;
            even_cols.push_back(e);
        } else if (n < m) {
            RealVector e = RealVector::Zero(d);
            e(n) = h;
            e(m) = h;
            even_cols.push_back(e);
            RealVector o = RealVector::Zero(d);
            o(n) = h;
            o(m) = -h;
            odd_cols.push_back(o);
        }
    }
    auto stack = [d](const std::vector<RealVector>& cols) {
        RealMatrix out(d, static_cast<Index>(cols.size()));
        for (std::size_t k = 0; k < cols.size(); ++k) out.col(static_cast<Index>(k)) = cols[k];
        return out;
    };
    const RealMatrix even = subspace_eigenvectors(s, stack(even_cols));
    const RealMatrix odd = subspace_eigenvectors(s, stack(odd_cols));

    basis_.resize(d, d);
    orders_.resize(d);
    Index col = 0;
    for (Index k = 0; k < std::max(even.cols(), odd.cols()); ++k) {
        if (k < even.cols()) {
            basis_.col(col) = even.col(k);
            orders_(col++) = static_cast<int>(2 * k);
        }
        if (k < odd.cols()) {
            basis_.col(col) = odd.col(k);
            orders_(col++) = static_cast<int>(2 * k + 1);
        }
    }
    for (Index k = 0; k < d; ++k) {
        auto v = basis_.col(k);
        for (Index i = 0; i < d; ++i) {
            if (std::abs(v(i)) > 1e-8) {
                if (v(i) < 0.0) v = -v;
                break;
            }
        }
    }
}

ComplexVector DfrftOperator::generator_eigenvalues() const {
    return (-kJ * (kPi / 2.0)) * orders_.cast<double>().cast<Complex>();
}

ComplexMatrix DfrftOperator::in_basis(const ComplexVector& values) const {
    const ComplexMatrix v = basis_.cast<Complex>();
    return v * values.asDiagonal() * v.transpose();
}

ComplexMatrix DfrftOperator::generator() const { return in_basis(generator_eigenvalues()); }

ComplexMatrix DfrftOperator::fractional_matrix(double beta) const {
    if (!std::isfinite(beta)) throw InvalidArgument("DFRFT order must be finite");
    if (beta == 0.0) return ComplexMatrix::Identity(size(), size());
    ComplexVector values(size());
    for (Index k = 0; k < size(); ++k) {
        values(k) = std::polar(1.0, -kPi * static_cast<double>(orders_(k)) * beta / 2.0);
    }
    return in_basis(values);
}

ComplexMatrix DfrftOperator::fractional_derivative(double beta) const {
    if (!std::isfinite(beta)) throw InvalidArgument("DFRFT order must be finite");
    ComplexVector values(size());
    for (Index k = 0; k < size(); ++k) {
        const double n = static_cast<double>(orders_(k));
        values(k) = (-kJ * (kPi / 2.0) * n) * std::polar(1.0, -kPi * n * beta / 2.0);
    }
    return in_basis(values);
}

DfrftOperator build_dfrft_operator(Index d) { return DfrftOperator(d); }

}  // namespace jfrf
