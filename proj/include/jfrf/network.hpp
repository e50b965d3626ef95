#pragma once

#include <cstdint>
#include <memory>
#include <string_view>
#include <vector>

#include "jfrf/jfrft.hpp"
#include "jfrf/types.hpp"

namespace jfrf {

enum class Activation { tanh, identity };
enum class ModelKind { jfrffnet, gfrffnet };

std::string_view to_string(Activation activation);
std::string_view to_string(ModelKind kind);
Activation parse_activation(std::string_view name);
ModelKind parse_model_kind(std::string_view name);

/// One filtering layer: map to the fractional domain, multiply element-wise
/// by the complex filter, map back, keep the real part, activate.
///
/// For jfrffnet the filter is N x D and both orders are used. For the
/// graph-only gfrffnet ablation the filter is N x 1 (shared across time)
/// and beta is ignored.
struct Layer {
    double alpha = 0.5;
    double beta = 0.5;
    ComplexMatrix filter;
    Activation activation = Activation::identity;
};

/// Transform matrices of one layer at its current orders. *_d entries are
/// derivatives with respect to the layer's own order (alpha for graph_*,
/// beta for time_*); inverse derivatives are d/da F_G^{-a} = -T F_G^{-a}.
struct LayerTransforms {
    ComplexMatrix graph_fwd, graph_inv, graph_fwd_d, graph_inv_d;
    ComplexMatrix time_fwd, time_inv, time_fwd_d, time_inv_d;

    static LayerTransforms compute(const JointOperator& op, const Layer& layer, ModelKind kind,
                                   bool with_derivatives);
};

/// Intermediates of one layer forward pass.
struct LayerTape {
    RealMatrix input;
    ComplexMatrix x1;  // fractional-domain input
    ComplexMatrix x2;  // filtered
    ComplexMatrix x3;  // reconstructed
    RealMatrix output;
};

class Network {
public:
    Network(JointOperator op, ModelKind kind, std::vector<Layer> layers);

    const JointOperator& op() const noexcept { return op_; }
    ModelKind kind() const noexcept { return kind_; }
    const std::vector<Layer>& layers() const noexcept { return layers_; }
    Index vertices() const noexcept { return op_.vertices(); }
    Index window() const noexcept { return op_.window(); }

    /// Incremented by every parameter mutation; tapes carry the value they saw.
    std::uint64_t generation() const noexcept { return generation_; }

    void set_layer(std::size_t index, Layer layer);

    /// Flat real parameter vector: per layer alpha, [beta,] Re(filter), Im(filter)
    /// (filter entries in column-major order).
    RealVector parameters() const;
    void set_parameters(const RealVector& params);
    /// False for the order parameters, which are exempt from weight decay.
    std::vector<bool> decay_mask() const;

    /// Per-layer count with each complex filter entry counted once:
    /// N*D + 2 (jfrffnet) or N + 1 (gfrffnet).
    Index parameters_per_layer() const noexcept;
    /// Same, counting real and imaginary parts separately.
    Index real_parameters_per_layer() const noexcept;
    Index parameter_count() const noexcept;
    Index real_parameter_count() const noexcept;

    std::vector<LayerTransforms> transforms(bool with_derivatives) const;

private:
    void check_layer(const Layer& layer) const;

    JointOperator op_;
    ModelKind kind_;
    std::vector<Layer> layers_;
    std::uint64_t generation_ = 0;
};

/// Orders (0.5, 0.5), filters of ones, tanh on hidden layers and identity
/// on the last.
Network init_network(JointOperator op, int num_layers, ModelKind kind = ModelKind::jfrffnet);

struct ForwardPass {
    RealMatrix output;
    std::vector<LayerTape> tapes;
    std::shared_ptr<const std::vector<LayerTransforms>> transforms;
    std::uint64_t generation = 0;
    std::uint64_t complex_mults = 0;  // multiply-adds spent in this pass
};

/// Complex multiply-adds of one layer forward pass: 2 (N^2 D + N D^2) + N D
/// for jfrffnet, 2 N^2 D + N D for gfrffnet.
std::uint64_t layer_forward_cost(ModelKind kind, Index n, Index d);

LayerTape layer_forward(const Layer& layer, ModelKind kind, const LayerTransforms& transforms,
                        const RealMatrix& x);
LayerTape layer_forward(const Layer& layer, const JointOperator& op, const RealMatrix& x);

ForwardPass network_forward(const Network& net, const RealMatrix& x);
ForwardPass network_forward(const Network& net,
                            std::shared_ptr<const std::vector<LayerTransforms>> transforms,
                            const RealMatrix& x);

struct LayerGradient {
    double d_alpha = 0.0;
    double d_beta = 0.0;
    /// Re holds dL/dRe(h), Im holds dL/dIm(h).
    ComplexMatrix d_filter;
};

struct Gradients {
    std::vector<LayerGradient> layers;
    RealMatrix d_input;

    /// Same layout as Network::parameters().
    RealVector flatten(ModelKind kind) const;
    Gradients& operator+=(const Gradients& other);
    Gradients& operator*=(double scale);
};

/// Analytic reverse pass. Throws ContractViolation if the pass does not
/// belong to the network's current parameters or lacks derivative matrices.
Gradients network_backward(const Network& net, const ForwardPass& pass, const RealMatrix& loss_grad);

double mse_loss(const RealMatrix& pred, const RealMatrix& clean);
/// d mse / d pred = 2 (pred - clean) / (N D).
RealMatrix mse_gradient(const RealMatrix& pred, const RealMatrix& clean);

}  // namespace jfrf
