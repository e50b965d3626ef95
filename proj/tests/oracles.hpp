#pragma once

// Independent reference computations shared by the unit tests and the
// acceptance suite. None of these go through the library's fast paths.

#include <cmath>

#include "fixtures.hpp"
#include "jfrf/network.hpp"
#include "jfrf/wiener.hpp"

namespace oracles {

using namespace jfrf;

inline ComplexMatrix direct_dft(Index d) {
    ComplexMatrix f(d, d);
    for (Index m = 0; m < d; ++m)
        for (Index n = 0; n < d; ++n)
            f(m, n) = std::polar(1.0 / std::sqrt(static_cast<double>(d)),
                                 -2.0 * kPi * static_cast<double>(m * n) / static_cast<double>(d));
    return f;
}

// Kronecker product written out entry by entry.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            for (Index k = 0; k < b.rows(); ++k)
                for (Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

// Column stacking.
inline ComplexVector stack(const ComplexMatrix& x) {
    ComplexVector v(x.size());
    Index k = 0;
    for (Index j = 0; j < x.cols(); ++j)
        for (Index i = 0; i < x.rows(); ++i) v(k++) = x(i, j);
    return v;
}

// E||A diag(h) B y - x||^2 evaluated densely from the observation model,
// without the normal-equation matrices.
struct DenseObjective {
    ComplexMatrix a, b, r_yy, r_xy, r_xx;

    DenseObjective(const SecondOrderStats& s, const JointOperator& op, double alpha, double beta) {
        a = kron(op.time.fractional_matrix(-beta), op.graph.fractional_matrix(-alpha));
        b = kron(op.time.fractional_matrix(beta), op.graph.fractional_matrix(alpha));
        const ComplexMatrix g = kron(s.g_time.transpose(), s.g_graph);
        r_yy = g * s.r_xx * g.adjoint() + g * s.r_xn + s.r_nx * g.adjoint() + s.r_nn;
        r_xy = s.r_xx * g.adjoint() + s.r_xn;
        r_xx = s.r_xx;
    }

    double operator()(const ComplexVector& h) const {
        const ComplexMatrix w = a * h.asDiagonal() * b;
        return (w * r_yy * w.adjoint() - w * r_xy.adjoint() - r_xy * w.adjoint() + r_xx).trace().real();
    }
};

// Gradient descent with backtracking on the real parameterization, using
// central-difference gradients of the dense objective.
inline double brute_force_minimum(const DenseObjective& f, Index m) {
    RealVector p = RealVector::Zero(2 * m);
    auto eval = [&](const RealVector& q) {
        ComplexVector h(m);
        for (Index k = 0; k < m; ++k) h(k) = Complex(q(k), q(m + k));
        return f(h);
    };
    double step = 1.0;
    double value = eval(p);
    for (int it = 0; it < 20000; ++it) {
        RealVector g(2 * m);
        for (Index i = 0; i < 2 * m; ++i) {
            RealVector up = p, down = p;
            up(i) += 1e-6;
            down(i) -= 1e-6;
            g(i) = (eval(up) - eval(down)) / 2e-6;
        }
        if (g.norm() < 1e-12) break;
        bool moved = false;
        while (step > 1e-14) {
            const RealVector trial = p - step * g;
            const double v = eval(trial);
            if (v < value) {
                p = trial;
                value = v;
                step *= 1.5;
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) break;
    }
    return value;
}

// Statistics sliced from one random PSD covariance of [x; n], so every
// block is mutually consistent.
inline SecondOrderStats random_stats(Index n, Index d, std::uint64_t seed, double noise_scale = 0.5) {
    const Index m = n * d;
    const ComplexMatrix l = fixtures::random_complex(2 * m, 2 * m, seed);
    ComplexMatrix joint = l * l.adjoint() / static_cast<double>(2 * m);
    joint.bottomRightCorner(m, m) *= noise_scale;
    joint.topRightCorner(m, m) *= std::sqrt(noise_scale) * 0.3;
    joint.bottomLeftCorner(m, m) = joint.topRightCorner(m, m).adjoint();
    SecondOrderStats s;
    s.r_xx = joint.topLeftCorner(m, m);
    s.r_nn = joint.bottomRightCorner(m, m);
    s.r_xn = joint.topRightCorner(m, m);
    s.r_nx = s.r_xn.adjoint();
    s.g_graph = ComplexMatrix::Identity(n, n) + 0.2 * fixtures::random_complex(n, n, seed + 1);
    s.g_time = ComplexMatrix::Identity(d, d) + 0.2 * fixtures::random_complex(d, d, seed + 2);
    return s;
}

struct GradientReport {
    Index checked = 0;
    Index failures = 0;
    double worst_relative = 0.0;
};

// Analytic reverse pass against central differences (step eps) over every
// real parameter of the network, for the MSE loss against target.
inline GradientReport check_network_gradients(Network net, const RealMatrix& x, const RealMatrix& target,
                                              double eps = 1e-5, double rel = 1e-4) {
    auto transforms = std::make_shared<const std::vector<LayerTransforms>>(net.transforms(true));
    const ForwardPass pass = network_forward(net, transforms, x);
    const RealVector analytic =
        network_backward(net, pass, mse_gradient(pass.output, target)).flatten(net.kind());
    const RealVector p0 = net.parameters();
    auto loss = [&](const RealVector& p) {
        net.set_parameters(p);
        return mse_loss(network_forward(net, x).output, target);
    };
    GradientReport report;
    for (Index i = 0; i < p0.size(); ++i) {
        RealVector up = p0, down = p0;
        up(i) += eps;
        down(i) -= eps;
        const double numeric = (loss(up) - loss(down)) / (2 * eps);
        const double scale = std::max(std::abs(analytic(i)), std::abs(numeric));
        const double err = std::abs(analytic(i) - numeric);
        if (scale > 1e-8) report.worst_relative = std::max(report.worst_relative, err / scale);
        if (!fixtures::grad_close(analytic(i), numeric, rel)) ++report.failures;
        ++report.checked;
    }
    return report;
}

// Random orders in [0.2, 1.3] and complex Gaussian filters.
inline Network random_network(const JointOperator& op, ModelKind kind, int layers, std::uint64_t seed) {
    Network net = init_network(op, layers, kind);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> order(0.2, 1.3);
    for (std::size_t l = 0; l < net.layers().size(); ++l) {
        Layer layer = net.layers()[l];
        layer.alpha = order(rng);
        if (kind == ModelKind::jfrffnet) layer.beta = order(rng);
        layer.filter = fixtures::random_complex(layer.filter.rows(), layer.filter.cols(), seed + 17 * l);
        net.set_layer(l, layer);
    }
    return net;
}

}  // namespace oracles
