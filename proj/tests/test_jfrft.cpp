#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "jfrf/errors.hpp"
#include "jfrf/jfrft.hpp"

using namespace jfrf;

namespace {

JointOperator op34(ShiftKind kind = ShiftKind::lap) {
    return fixtures::joint_operator(fixtures::knn_graph(3, 1, 4), kind, 4);
}

}  // namespace

TEST_CASE("zero orders leave the signal unchanged") {
    const JointOperator op = op34();
    const ComplexMatrix x = fixtures::random_complex(3, 4, 1);
    CHECK(forward(op, x, 0.0, 0.0) == x);
    CHECK(inverse(op, x, 0.0, 0.0) == x);
}

TEST_CASE("1 x 1 case is a scalar product") {
    const SpectralBasis b = eigendecompose(RealMatrix(RealMatrix::Constant(1, 1, 3.0)));
    const JointOperator op{GfrftOperator(b), DfrftOperator(1)};
    ComplexMatrix x(1, 1);
    x(0, 0) = Complex(2.0, -1.0);
    const Complex s = op.graph.fractional_matrix(0.4)(0, 0) * op.time.fractional_matrix(0.9)(0, 0);
    CHECK(std::abs(forward(op, x, 0.4, 0.9)(0, 0) - s * x(0, 0)) < 1e-14);
}

TEST_CASE("forward and inverse match explicit Kronecker matrices") {
    const JointOperator op = op34(ShiftKind::adj);
    const ComplexMatrix x = fixtures::random_complex(3, 4, 2);
    const ComplexMatrix big =
        oracles::kron(op.time.fractional_matrix(0.8), op.graph.fractional_matrix(0.3));
    CHECK((oracles::stack(forward(op, x, 0.3, 0.8)) - big * oracles::stack(x)).norm() < 1e-10);
    CHECK((explicit_matrix(op, 0.3, 0.8) - big).norm() < 1e-12);
    const ComplexMatrix inv_big =
        oracles::kron(op.time.fractional_matrix(-0.8), op.graph.fractional_matrix(-0.3));
    CHECK((oracles::stack(inverse(op, x, 0.3, 0.8)) - inv_big * oracles::stack(x)).norm() < 1e-10);
    CHECK((kron(op.time.fractional_matrix(0.8), op.graph.fractional_matrix(0.3)) - big).norm() == 0.0);

    const JointOperator small =
        fixtures::joint_operator(fixtures::knn_graph(2, 1, 5), ShiftKind::lap, 2);
    const ComplexMatrix x2 = fixtures::random_complex(2, 3, 6).leftCols(2);
    const ComplexMatrix base = oracles::kron(unitary_dft(2), gft_matrix(eigendecompose(shift_operator(
                                                               fixtures::knn_graph(2, 1, 5), ShiftKind::lap))));
    CHECK((explicit_matrix(small, 1.0, 1.0) - base).norm() < 1e-8);
    CHECK((oracles::stack(inverse(small, x2, 0.6, 1.1)) -
           oracles::kron(small.time.fractional_matrix(-1.1), small.graph.fractional_matrix(-0.6)) * oracles::stack(x2))
              .norm() < 1e-10);
}

TEST_CASE("inverse undoes forward and energy is preserved") {
    const JointOperator op = fixtures::joint_operator(fixtures::knn_graph(8, 3, 7), ShiftKind::nlap, 6);
    const ComplexMatrix x = fixtures::random_complex(8, 6, 8);
    CHECK(relative_error(inverse(op, forward(op, x, 0.5, 0.5), 0.5, 0.5), x) < 1e-8);
    CHECK(std::abs(forward(op, x, 0.73, 1.31).norm() - x.norm()) < 1e-8 * x.norm());
    const ComplexMatrix e = explicit_matrix(op, 0.4, 0.9);
    CHECK((e * e.adjoint() - ComplexMatrix::Identity(48, 48)).norm() < 1e-8);
}

TEST_CASE("order additivity") {
    const JointOperator op = fixtures::joint_operator(fixtures::knn_graph(6, 2, 9), ShiftKind::lap, 5);
    const ComplexMatrix x = fixtures::random_complex(6, 5, 10);
    CHECK((forward(op, forward(op, x, 0.2, 0.9), 0.7, -0.4) - forward(op, x, 0.9, 0.5)).norm() < 1e-7);
}

TEST_CASE("N = 1 explicit matrix is a scaled time transform") {
    const SpectralBasis b = eigendecompose(RealMatrix(RealMatrix::Constant(1, 1, 2.0)));
    const JointOperator op{GfrftOperator(b), DfrftOperator(4)};
    const Complex s = op.graph.fractional_matrix(0.5)(0, 0);
    CHECK((explicit_matrix(op, 0.5, 0.7) - s * op.time.fractional_matrix(0.7)).norm() < 1e-14);
}

TEST_CASE("derivative action") {
    const JointOperator op = op34(ShiftKind::sna);
    const ComplexMatrix x = fixtures::random_complex(3, 4, 11);
    const double eps = 1e-4, a = 0.35, b = 0.8;
    const ComplexMatrix fd_a = (forward(op, x, a + eps, b) - forward(op, x, a - eps, b)) / (2 * eps);
    const ComplexMatrix fd_b = (forward(op, x, a, b + eps) - forward(op, x, a, b - eps)) / (2 * eps);
    CHECK((derivative_action(op, x, a, b, Order::alpha) - fd_a).cwiseAbs().maxCoeff() < 1e-6);
    CHECK((derivative_action(op, x, a, b, Order::beta) - fd_b).cwiseAbs().maxCoeff() < 1e-6);
    const ComplexMatrix big = oracles::kron(op.time.fractional_matrix(b), op.graph.fractional_derivative(a));
    CHECK((oracles::stack(derivative_action(op, x, a, b, Order::alpha)) - big * oracles::stack(x)).norm() < 1e-10);

    const SpectralBasis id = eigendecompose(RealMatrix(RealMatrix::Identity(3, 3)));
    const JointOperator flat{GfrftOperator(id), DfrftOperator(4)};
    CHECK(derivative_action(flat, x, a, b, Order::alpha).isZero(0.0));
}

TEST_CASE("vec identity for every pairing") {
    const JointOperator op = op34(ShiftKind::nlap);
    const ComplexMatrix x = fixtures::random_complex(3, 4, 12);
    const ComplexMatrix as[] = {op.graph.fractional_matrix(0.6), op.graph.fractional_matrix(-0.6),
                                op.graph.fractional_derivative(0.6)};
    const ComplexMatrix bs[] = {op.time.fractional_matrix(1.2), op.time.fractional_matrix(-1.2),
                                op.time.fractional_derivative(1.2)};
    for (const auto& a : as)
        for (const auto& b : bs) {
            CHECK((oracles::stack(a * x * b.transpose()) - oracles::kron(b, a) * oracles::stack(x)).norm() < 1e-10);
            CHECK((vec(a * x * b.transpose()) - kron(b, a) * vec(x)).norm() < 1e-10);
        }
    CHECK(unvec(vec(x), 3, 4) == x);
}

TEST_CASE("guards") {
    const JointOperator op = op34();
    CHECK_THROWS_AS(forward(op, ComplexMatrix::Zero(3, 3), 0.1, 0.1), InvalidArgument);
    CHECK_THROWS_AS(inverse(op, ComplexMatrix::Zero(2, 4), 0.1, 0.1), InvalidArgument);
    const JointOperator big = fixtures::joint_operator(fixtures::knn_graph(70, 3, 13), ShiftKind::lap, 60);
    CHECK_THROWS_AS(explicit_matrix(big, 0.1, 0.1), CapacityError);
}
