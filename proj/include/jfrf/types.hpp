#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace jfrf {

using Index = Eigen::Index;
using Complex = std::complex<double>;

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kJ{0.0, 1.0};

/// Frobenius norm of (a - b) divided by the norm of b (absolute when b is zero).
template <typename A, typename B>
double relative_error(const A& a, const B& b) {
    const double denom = b.norm();
    const double diff = (a - b).norm();
    return denom > 0.0 ? diff / denom : diff;
}

}  // namespace jfrf
