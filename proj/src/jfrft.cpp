#include "jfrf/jfrft.hpp"

#include <string>

#include "jfrf/errors.hpp"

namespace jfrf {
namespace {

void check_shape(const JointOperator& op, const ComplexMatrix& x) {
    if (x.rows() != op.vertices() || x.cols() != op.window()) {
        throw InvalidArgument("signal shape " + std::to_string(x.rows()) + "x" +
                              std::to_string(x.cols()) + " does not match operator " +
                              std::to_string(op.vertices()) + "x" + std::to_string(op.window()));
    }
}

}  // namespace

ComplexMatrix forward(const JointOperator& op, const ComplexMatrix& x, double alpha, double beta) {
    check_shape(op, x);
    return op.graph.fractional_matrix(alpha) * x * op.time.fractional_matrix(beta).transpose();
}

ComplexMatrix inverse(const JointOperator& op, const ComplexMatrix& x, double alpha, double beta) {
    return forward(op, x, -alpha, -beta);
}

ComplexMatrix explicit_matrix(const JointOperator& op, double alpha, double beta) {
    if (op.vertices() * op.window() > kExplicitMatrixLimit) {
        throw CapacityError("explicit JFRFT matrix of side " +
                            std::to_string(op.vertices() * op.window()) + " exceeds the limit of " +
                            std::to_string(kExplicitMatrixLimit));
    }
    return kron(op.time.fractional_matrix(beta), op.graph.fractional_matrix(alpha));
}

ComplexMatrix derivative_action(const JointOperator& op, const ComplexMatrix& x, double alpha,
                                double beta, Order which) {
    check_shape(op, x);
    if (which == Order::alpha) {
        return op.graph.fractional_derivative(alpha) * x *
               op.time.fractional_matrix(beta).transpose();
    }
    return op.graph.fractional_matrix(alpha) * x * op.time.fractional_derivative(beta).transpose();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i) {
        for (Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexVector vec(const ComplexMatrix& x) {
    return Eigen::Map<const ComplexVector>(x.data(), x.size());
}

ComplexMatrix unvec(const ComplexVector& v, Index rows, Index cols) {
    if (rows * cols != v.size()) throw InvalidArgument("unvec: size mismatch");
    return Eigen::Map<const ComplexMatrix>(v.data(), rows, cols);
}

}  // namespace jfrf
