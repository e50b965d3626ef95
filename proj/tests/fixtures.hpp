#pragma once

#include <random>

#include "jfrf/data.hpp"
#include "jfrf/graph.hpp"
#include "jfrf/jfrft.hpp"
#include "jfrf/spectral_basis.hpp"

namespace fixtures {

using namespace jfrf;

// Random points in the unit square joined by a symmetric kNN graph.
inline Graph knn_graph(Index n, int k, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    RealMatrix pts(n, 2);
    for (Index i = 0; i < n; ++i) {
        pts(i, 0) = unit(rng);
        pts(i, 1) = unit(rng);
    }
    return build_knn_adjacency(pts, k);
}

inline JointOperator joint_operator(const Graph& g, ShiftKind kind, Index d) {
    const SpectralBasis basis = eigendecompose(shift_operator(g, kind));
    return JointOperator{GfrftOperator(basis), DfrftOperator(d)};
}

inline ComplexMatrix random_complex(Index r, Index c, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> z(0.0, 1.0);
    ComplexMatrix m(r, c);
    for (Index j = 0; j < c; ++j)
        for (Index i = 0; i < r; ++i) m(i, j) = Complex(z(rng), z(rng));
    return m;
}

inline RealMatrix random_real(Index r, Index c, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> z(0.0, 1.0);
    RealMatrix m(r, c);
    for (Index j = 0; j < c; ++j)
        for (Index i = 0; i < r; ++i) m(i, j) = z(rng);
    return m;
}

// Mixed relative/absolute closeness used by the gradient checks.
inline bool grad_close(double analytic, double numeric, double rel = 1e-4, double floor = 1e-8) {
    return std::abs(analytic - numeric) <= rel * std::max(std::abs(analytic), std::abs(numeric)) + floor;
}

}  // namespace fixtures
