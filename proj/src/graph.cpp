#include "jfrf/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "jfrf/errors.hpp"

namespace jfrf {

std::string_view to_string(ShiftKind kind) {
    switch (kind) {
        case ShiftKind::adj: return "adj";
        case ShiftKind::lap: return "lap";
        case ShiftKind::rna: return "rna";
        case ShiftKind::sna: return "sna";
        case ShiftKind::nlap: return "nlap";
    }
    return "?";
}

ShiftKind parse_shift_kind(std::string_view name) {
    for (ShiftKind kind : kAllShiftKinds) {
        if (to_string(kind) == name) return kind;
    }
    throw InvalidArgument("unknown shift kind '" + std::string(name) +
                          "' (expected adj, lap, rna, sna or nlap)");
}

Graph::Graph(RealMatrix adjacency) : adjacency_(std::move(adjacency)) {
    if (adjacency_.rows() == 0 || adjacency_.rows() != adjacency_.cols()) {
        throw InvalidArgument("adjacency must be a non-empty square matrix");
    }
    if (!adjacency_.allFinite()) throw InvalidArgument("adjacency has non-finite entries");
    for (Index i = 0; i < adjacency_.rows(); ++i) {
        if (adjacency_(i, i) != 0.0) {
            throw InvalidArgument("adjacency has a self-loop at vertex " + std::to_string(i));
        }
    }
    const double scale = std::max(1.0, adjacency_.cwiseAbs().maxCoeff());
    symmetric_ = (adjacency_ - adjacency_.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale;
}

RealVector Graph::degrees() const { return adjacency_.rowwise().sum(); }

Graph build_knn_adjacency(const RealMatrix& features, int k) {
    const Index n = features.rows();
    if (k < 1) throw InvalidArgument("k must be positive");
    if (k >= n) {
        throw InvalidArgument("k = " + std::to_string(k) + " must be smaller than the vertex count " +
                              std::to_string(n));
    }
    if (!features.allFinite()) throw InvalidArgument("features have non-finite entries");

    RealMatrix a = RealMatrix::Zero(n, n);
    std::vector<Index> order;
    std::vector<double> dist(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
        order.clear();
        for (Index j = 0; j < n; ++j) {
            if (j == i) continue;
            dist[static_cast<std::size_t>(j)] = (features.row(i) - features.row(j)).squaredNorm();
            order.push_back(j);
        }
        // stable on index order, so equal distances keep the lower index first
        std::stable_sort(order.begin(), order.end(), [&](Index lhs, Index rhs) {
            return dist[static_cast<std::size_t>(lhs)] < dist[static_cast<std::size_t>(rhs)];
        });
        for (int m = 0; m < k; ++m) a(i, order[static_cast<std::size_t>(m)]) = 1.0;
    }
    return Graph(a.cwiseMax(a.transpose()));
}

Graph build_correlation_adjacency(const RealMatrix& series, double threshold) {
    const Index n = series.rows();
    const Index t = series.cols();
    if (t < 2) throw InvalidArgument("correlation graph needs at least two time samples");
    if (!std::isfinite(threshold) || threshold < 0.0) {
        throw InvalidArgument("correlation threshold must be a finite non-negative number");
    }
    RealMatrix centered = series.colwise() - series.rowwise().mean();
    RealVector norms = centered.rowwise().norm();
    for (Index i = 0; i < n; ++i) {
        if (!(norms(i) > 0.0)) {
            throw DegenerateInput("vertex " + std::to_string(i) +
                                  " has a constant series; Pearson correlation is undefined");
        }
        centered.row(i) /= norms(i);
    }
    RealMatrix rho = (centered * centered.transpose()).cwiseAbs();
    RealMatrix a = RealMatrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            const double r = std::min(1.0, 0.5 * (rho(i, j) + rho(j, i)));
            if (r >= threshold) a(i, j) = a(j, i) = r;
        }
    }
    return Graph(a);
}

Graph build_distance_adjacency(const RealMatrix& coords, double sigma, double cutoff) {
    if (coords.cols() != 2) throw InvalidArgument("coordinates must have two columns");
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InvalidArgument("sigma must be positive");
    if (!(cutoff > 0.0)) throw InvalidArgument("cutoff must be positive");
    const Index n = coords.rows();
    RealMatrix a = RealMatrix::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            const double d2 = (coords.row(i) - coords.row(j)).squaredNorm();
            if (std::sqrt(d2) <= cutoff) a(i, j) = a(j, i) = std::exp(-d2 / (2.0 * sigma * sigma));
        }
    }
    return Graph(a);
}

RealMatrix shift_operator(const Graph& graph, ShiftKind kind) {
    const RealMatrix& a = graph.adjacency();
    const Index n = graph.size();
    if (kind == ShiftKind::adj) return a;

    if (!graph.is_symmetric() && kind != ShiftKind::rna) {
        throw InvalidArgument("shift kind '" + std::string(to_string(kind)) +
                              "' requires a symmetric adjacency; use adj or rna");
    }
    const RealVector deg = graph.degrees();
    for (Index i = 0; i < n; ++i) {
        if (!(deg(i) > 0.0)) {
            throw DegenerateInput("vertex " + std::to_string(i) + " is isolated; shift kind '" +
                                  std::string(to_string(kind)) + "' needs positive degrees");
        }
    }
    switch (kind) {
        case ShiftKind::lap: {
            RealMatrix l = -a;
            l.diagonal() += deg;
            return l;
        }
        case ShiftKind::rna: return deg.cwiseInverse().asDiagonal() * a;
        case ShiftKind::sna:
        case ShiftKind::nlap: {
            const RealVector s = deg.cwiseSqrt().cwiseInverse();
            RealMatrix sna = s.asDiagonal() * a * s.asDiagonal();
            sna = (0.5 * (sna + sna.transpose())).eval();
            if (kind == ShiftKind::sna) return sna;
            return RealMatrix::Identity(n, n) - sna;
        }
        case ShiftKind::adj: break;
    }
    return a;
}

}  // namespace jfrf
