#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "jfrf/dfrft.hpp"
#include "oracles.hpp"

using namespace jfrf;

using oracles::direct_dft;

TEST_CASE("one-dimensional transform is trivial") {
    const DfrftOperator op(1);
    for (double b : {0.0, 0.3, 2.7}) CHECK(std::abs(op.fractional_matrix(b)(0, 0) - 1.0) < 1e-15);
    CHECK(op.fractional_derivative(0.5)(0, 0) == Complex(0.0));
}

TEST_CASE("first order is the unitary DFT") {
    for (Index d = 1; d <= 24; ++d) {
        CAPTURE(d);
        const DfrftOperator op(d);
        CHECK((op.fractional_matrix(1.0) - direct_dft(d)).norm() < 1e-6);
        CHECK((unitary_dft(d) - direct_dft(d)).norm() < 1e-12);
    }
}

TEST_CASE("DFT eigenvalues for d = 8") {
    const ComplexMatrix f = DfrftOperator(8).fractional_matrix(1.0);
    Eigen::ComplexEigenSolver<ComplexMatrix> es(f);
    const Complex allowed[] = {1.0, -kJ, -1.0, kJ};
    for (Index k = 0; k < 8; ++k) {
        double best = 1e9;
        for (Complex a : allowed) best = std::min(best, std::abs(es.eigenvalues()(k) - a));
        CHECK(best < 1e-6);
    }
}

TEST_CASE("hermite basis and indices") {
    for (Index d = 2; d <= 17; ++d) {
        CAPTURE(d);
        const DfrftOperator op(d);
        const RealMatrix& v = op.hermite_basis();
        CHECK((v.transpose() * v - RealMatrix::Identity(d, d)).norm() < 1e-10);
        const auto& idx = op.hermite_indices();
        std::set<int> seen(idx.data(), idx.data() + idx.size());
        CHECK(static_cast<Index>(seen.size()) == d);
        CHECK(*seen.begin() == 0);
        // skipped value: d - 1 for even d, d for odd d
        const int skipped = d % 2 == 0 ? static_cast<int>(d - 1) : static_cast<int>(d);
        CHECK(seen.count(skipped) == 0);
        for (int k : seen) CHECK(k <= d);
    }
}

TEST_CASE("orders 0, 2, 4 and additivity") {
    for (Index d : {4, 5, 6, 8}) {
        const DfrftOperator op(d);
        CHECK(op.fractional_matrix(0.0) == ComplexMatrix::Identity(d, d));
        CHECK((op.fractional_matrix(4.0) - ComplexMatrix::Identity(d, d)).norm() < 1e-8);
        const ComplexMatrix f1 = op.fractional_matrix(1.0);
        CHECK((op.fractional_matrix(2.0) - f1 * f1).norm() < 1e-8);
    }
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    const DfrftOperator op(6);
    for (int i = 0; i < 20; ++i) {
        const double a = u(rng), b = u(rng);
        CHECK((op.fractional_matrix(a) * op.fractional_matrix(b) - op.fractional_matrix(a + b)).norm() < 1e-7);
    }
}

TEST_CASE("unitarity, inverse and skew-Hermitian generator") {
    const DfrftOperator op(7);
    for (double b : {-1.3, 0.2, 0.5, 1.0, 2.6}) {
        const ComplexMatrix f = op.fractional_matrix(b);
        CHECK((f * f.adjoint() - ComplexMatrix::Identity(7, 7)).norm() < 1e-8);
        CHECK((op.fractional_matrix(-b) - f.adjoint()).norm() < 1e-8);
    }
    const ComplexMatrix t = op.generator();
    CHECK((t + t.adjoint()).norm() < 1e-10);
}

TEST_CASE("derivative") {
    const DfrftOperator op(6);
    const double eps = 1e-4;
    const ComplexMatrix fd = (op.fractional_matrix(0.5 + eps) - op.fractional_matrix(0.5 - eps)) / (2 * eps);
    CHECK((op.fractional_derivative(0.5) - fd).cwiseAbs().maxCoeff() < 1e-6);
    for (double b : {-0.7, 0.0, 1.4}) {
        CHECK((op.fractional_derivative(b) * op.fractional_matrix(-b) - op.generator()).norm() < 1e-8);
    }
}

TEST_CASE("invalid size") { CHECK_THROWS(DfrftOperator(0)); }
