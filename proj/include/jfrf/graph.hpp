#pragma once

#include <array>
#include <string_view>

#include "jfrf/types.hpp"

namespace jfrf {

/// Graph shift operator variants: adjacency, Laplacian, row-normalized
/// adjacency, symmetric-normalized adjacency and normalized Laplacian.
enum class ShiftKind { adj, lap, rna, sna, nlap };

inline constexpr std::array<ShiftKind, 5> kAllShiftKinds{
    ShiftKind::adj, ShiftKind::lap, ShiftKind::rna, ShiftKind::sna, ShiftKind::nlap};

std::string_view to_string(ShiftKind kind);
ShiftKind parse_shift_kind(std::string_view name);

/// Weighted graph held as a dense adjacency matrix. A(m, n) != 0 means an
/// edge from n to m. Square, finite, zero diagonal.
class Graph {
public:
    explicit Graph(RealMatrix adjacency);

    Index size() const noexcept { return adjacency_.rows(); }
    const RealMatrix& adjacency() const noexcept { return adjacency_; }
    bool is_symmetric() const noexcept { return symmetric_; }

    /// Row sums of the adjacency.
    RealVector degrees() const;

private:
    RealMatrix adjacency_;
    bool symmetric_;
};

/// Binary k-nearest-neighbour graph (Euclidean, ties to the lower index),
/// symmetrized with max(A, A^T).
Graph build_knn_adjacency(const RealMatrix& features, int k);

/// |Pearson correlation| between rows, kept where it reaches the threshold.
Graph build_correlation_adjacency(const RealMatrix& series, double threshold = 0.5);

/// Gaussian kernel exp(-d^2 / (2 sigma^2)) on 2-D coordinates, zero beyond cutoff.
Graph build_distance_adjacency(const RealMatrix& coords, double sigma, double cutoff);

RealMatrix shift_operator(const Graph& graph, ShiftKind kind);

}  // namespace jfrf
