#pragma once

#include "jfrf/dfrft.hpp"
#include "jfrf/gfrft.hpp"
#include "jfrf/types.hpp"

namespace jfrf {

/// Joint time-vertex fractional transform F_J = F^beta (x) F_G^alpha acting on
/// N x D signals (rows are vertices, columns are time). All applications use
/// the two-sided form F_G^alpha X (F^beta)^T, which equals F_J vec(X) under
/// column-major vectorization.
struct JointOperator {
    GfrftOperator graph;
    DfrftOperator time;

    Index vertices() const noexcept { return graph.size(); }
    Index window() const noexcept { return time.size(); }
};

enum class Order { alpha, beta };

inline constexpr Index kExplicitMatrixLimit = 4096;

ComplexMatrix forward(const JointOperator& op, const ComplexMatrix& x, double alpha, double beta);
ComplexMatrix inverse(const JointOperator& op, const ComplexMatrix& x, double alpha, double beta);

/// Dense ND x ND Kronecker matrix; throws CapacityError above kExplicitMatrixLimit.
ComplexMatrix explicit_matrix(const JointOperator& op, double alpha, double beta);

/// Action of dF_J / d(order) on X.
ComplexMatrix derivative_action(const JointOperator& op, const ComplexMatrix& x, double alpha,
                                double beta, Order which);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
/// Column-stacking vectorization.
ComplexVector vec(const ComplexMatrix& x);
ComplexMatrix unvec(const ComplexVector& v, Index rows, Index cols);

}  // namespace jfrf
