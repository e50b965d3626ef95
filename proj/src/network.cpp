#include "jfrf/network.hpp"

#include <cmath>
#include <string>

#include "jfrf/errors.hpp"

namespace jfrf {
namespace {

RealMatrix activate(Activation activation, const RealMatrix& x) {
    if (activation == Activation::tanh) return x.array().tanh().matrix();
    return x;
}

// Sum over entries of Re(conj(g) * v).
double real_inner(const ComplexMatrix& g, const ComplexMatrix& v) {
    return (g.conjugate().cwiseProduct(v)).sum().real();
}

}  // namespace

std::string_view to_string(Activation activation) {
    return activation == Activation::tanh ? "tanh" : "identity";
}

std::string_view to_string(ModelKind kind) {
    return kind == ModelKind::jfrffnet ? "jfrffnet" : "gfrffnet";
}

Activation parse_activation(std::string_view name) {
    if (name == "tanh") return Activation::tanh;
    if (name == "identity") return Activation::identity;
    throw InvalidArgument("unknown activation '" + std::string(name) + "'");
}

ModelKind parse_model_kind(std::string_view name) {
    if (name == "jfrffnet") return ModelKind::jfrffnet;
    if (name == "gfrffnet") return ModelKind::gfrffnet;
    throw InvalidArgument("unknown model '" + std::string(name) + "' (expected jfrffnet or gfrffnet)");
}

LayerTransforms LayerTransforms::compute(const JointOperator& op, const Layer& layer,
                                         ModelKind kind, bool with_derivatives) {
    LayerTransforms t;
    t.graph_fwd = op.graph.fractional_matrix(layer.alpha);
    t.graph_inv = op.graph.fractional_matrix(-layer.alpha);
    if (with_derivatives) {
        t.graph_fwd_d = op.graph.fractional_derivative(layer.alpha);
        t.graph_inv_d = -op.graph.fractional_derivative(-layer.alpha);
    }
    if (kind == ModelKind::jfrffnet) {
        t.time_fwd = op.time.fractional_matrix(layer.beta);
        t.time_inv = op.time.fractional_matrix(-layer.beta);
        if (with_derivatives) {
            t.time_fwd_d = op.time.fractional_derivative(layer.beta);
            t.time_inv_d = -op.time.fractional_derivative(-layer.beta);
        }
    }
    return t;
}

Network::Network(JointOperator op, ModelKind kind, std::vector<Layer> layers)
    : op_(std::move(op)), kind_(kind), layers_(std::move(layers)) {
    if (layers_.empty()) throw InvalidArgument("a network needs at least one layer");
    for (const Layer& layer : layers_) check_layer(layer);
}

void Network::check_layer(const Layer& layer) const {
    const Index cols = kind_ == ModelKind::jfrffnet ? window() : 1;
    if (layer.filter.rows() != vertices() || layer.filter.cols() != cols) {
        throw InvalidArgument("layer filter must be " + std::to_string(vertices()) + "x" +
                              std::to_string(cols));
    }
    if (!std::isfinite(layer.alpha) || !std::isfinite(layer.beta) || !layer.filter.allFinite()) {
        throw InvalidArgument("layer parameters must be finite");
    }
}

void Network::set_layer(std::size_t index, Layer layer) {
    check_layer(layer);
    layers_.at(index) = std::move(layer);
    ++generation_;
}

RealVector Network::parameters() const {
    RealVector p(real_parameter_count());
    Index k = 0;
    for (const Layer& layer : layers_) {
        p(k++) = layer.alpha;
        if (kind_ == ModelKind::jfrffnet) p(k++) = layer.beta;
        const Index m = layer.filter.size();
        p.segment(k, m) = layer.filter.real().reshaped();
        p.segment(k + m, m) = layer.filter.imag().reshaped();
        k += 2 * m;
    }
    return p;
}

void Network::set_parameters(const RealVector& params) {
    if (params.size() != real_parameter_count()) {
        throw InvalidArgument("parameter vector has the wrong length");
    }
    if (!params.allFinite()) throw InvalidArgument("parameters must be finite");
    Index k = 0;
    for (Layer& layer : layers_) {
        layer.alpha = params(k++);
        if (kind_ == ModelKind::jfrffnet) layer.beta = params(k++);
        const Index m = layer.filter.size();
        for (Index i = 0; i < m; ++i) {
            layer.filter(i % layer.filter.rows(), i / layer.filter.rows()) =
                Complex(params(k + i), params(k + m + i));
        }
        k += 2 * m;
    }
    ++generation_;
}

std::vector<bool> Network::decay_mask() const {
    std::vector<bool> mask;
    mask.reserve(static_cast<std::size_t>(real_parameter_count()));
    for (const Layer& layer : layers_) {
        mask.push_back(false);
        if (kind_ == ModelKind::jfrffnet) mask.push_back(false);
        mask.insert(mask.end(), static_cast<std::size_t>(2 * layer.filter.size()), true);
    }
    return mask;
}

Index Network::parameters_per_layer() const noexcept {
    return kind_ == ModelKind::jfrffnet ? vertices() * window() + 2 : vertices() + 1;
}

Index Network::real_parameters_per_layer() const noexcept {
    return kind_ == ModelKind::jfrffnet ? 2 * vertices() * window() + 2 : 2 * vertices() + 1;
}

Index Network::parameter_count() const noexcept {
    return parameters_per_layer() * static_cast<Index>(layers_.size());
}

Index Network::real_parameter_count() const noexcept {
    return real_parameters_per_layer() * static_cast<Index>(layers_.size());
}

std::vector<LayerTransforms> Network::transforms(bool with_derivatives) const {
    std::vector<LayerTransforms> out;
    out.reserve(layers_.size());
    for (const Layer& layer : layers_) {
        out.push_back(LayerTransforms::compute(op_, layer, kind_, with_derivatives));
    }
    return out;
}

Network init_network(JointOperator op, int num_layers, ModelKind kind) {
    if (num_layers < 1) throw InvalidArgument("num_layers must be at least 1");
    const Index cols = kind == ModelKind::jfrffnet ? op.window() : 1;
    std::vector<Layer> layers(static_cast<std::size_t>(num_layers));
    for (std::size_t l = 0; l < layers.size(); ++l) {
        layers[l].alpha = 0.5;
        layers[l].beta = kind == ModelKind::jfrffnet ? 0.5 : 0.0;
        layers[l].filter = ComplexMatrix::Ones(op.vertices(), cols);
        layers[l].activation = l + 1 == layers.size() ? Activation::identity : Activation::tanh;
    }
    return Network(std::move(op), kind, std::move(layers));
}

std::uint64_t layer_forward_cost(ModelKind kind, Index n, Index d) {
    const auto un = static_cast<std::uint64_t>(n);
    const auto ud = static_cast<std::uint64_t>(d);
    if (kind == ModelKind::jfrffnet) return 2 * (un * un * ud + un * ud * ud) + un * ud;
    return 2 * un * un * ud + un * ud;
}

LayerTape layer_forward(const Layer& layer, ModelKind kind, const LayerTransforms& t,
                        const RealMatrix& x) {
    const Index n = t.graph_fwd.rows();
    const Index cols = kind == ModelKind::jfrffnet ? t.time_fwd.rows() : x.cols();
    if (x.rows() != n || x.cols() != cols) throw InvalidArgument("layer input has the wrong shape");

    LayerTape tape;
    tape.input = x;
    const ComplexMatrix xc = x.cast<Complex>();
    if (kind == ModelKind::jfrffnet) {
        tape.x1 = t.graph_fwd * xc * t.time_fwd.transpose();
        tape.x2 = layer.filter.cwiseProduct(tape.x1);
        tape.x3 = t.graph_inv * tape.x2 * t.time_inv.transpose();
    } else {
        tape.x1 = t.graph_fwd * xc;
        tape.x2 = tape.x1.array().colwise() * layer.filter.col(0).array();
        tape.x3 = t.graph_inv * tape.x2;
    }
    tape.output = activate(layer.activation, tape.x3.real());
    return tape;
}

LayerTape layer_forward(const Layer& layer, const JointOperator& op, const RealMatrix& x) {
    return layer_forward(layer, ModelKind::jfrffnet,
                         LayerTransforms::compute(op, layer, ModelKind::jfrffnet, false), x);
}

ForwardPass network_forward(const Network& net, const RealMatrix& x) {
    return network_forward(
        net, std::make_shared<const std::vector<LayerTransforms>>(net.transforms(false)), x);
}

ForwardPass network_forward(const Network& net,
                            std::shared_ptr<const std::vector<LayerTransforms>> transforms,
                            const RealMatrix& x) {
    if (!transforms || transforms->size() != net.layers().size()) {
        throw ContractViolation("transform set does not match the network");
    }
    ForwardPass pass;
    pass.generation = net.generation();
    pass.tapes.reserve(net.layers().size());
    const RealMatrix* current = &x;
    for (std::size_t l = 0; l < net.layers().size(); ++l) {
        pass.tapes.push_back(layer_forward(net.layers()[l], net.kind(), (*transforms)[l], *current));
        pass.complex_mults += layer_forward_cost(net.kind(), net.vertices(), x.cols());
        current = &pass.tapes.back().output;
    }
    pass.output = *current;
    pass.transforms = std::move(transforms);
    return pass;
}

RealVector Gradients::flatten(ModelKind kind) const {
    Index total = 0;
    for (const LayerGradient& g : layers) {
        total += (kind == ModelKind::jfrffnet ? 2 : 1) + 2 * g.d_filter.size();
    }
    RealVector out(total);
    Index k = 0;
    for (const LayerGradient& g : layers) {
        out(k++) = g.d_alpha;
        if (kind == ModelKind::jfrffnet) out(k++) = g.d_beta;
        const Index m = g.d_filter.size();
        out.segment(k, m) = g.d_filter.real().reshaped();
        out.segment(k + m, m) = g.d_filter.imag().reshaped();
        k += 2 * m;
    }
    return out;
}

Gradients& Gradients::operator+=(const Gradients& other) {
    if (layers.empty()) {
        *this = other;
        return *this;
    }
    for (std::size_t l = 0; l < layers.size(); ++l) {
        layers[l].d_alpha += other.layers[l].d_alpha;
        layers[l].d_beta += other.layers[l].d_beta;
        layers[l].d_filter += other.layers[l].d_filter;
    }
    d_input += other.d_input;
    return *this;
}

Gradients& Gradients::operator*=(double scale) {
    for (LayerGradient& g : layers) {
        g.d_alpha *= scale;
        g.d_beta *= scale;
        g.d_filter *= scale;
    }
    d_input *= scale;
    return *this;
}

Gradients network_backward(const Network& net, const ForwardPass& pass, const RealMatrix& loss_grad) {
    if (pass.generation != net.generation() || pass.tapes.size() != net.layers().size() ||
        !pass.transforms) {
        throw ContractViolation("forward tape is stale: parameters changed since the forward pass");
    }
    if (loss_grad.rows() != pass.output.rows() || loss_grad.cols() != pass.output.cols()) {
        throw InvalidArgument("loss gradient shape does not match the network output");
    }
    const bool joint = net.kind() == ModelKind::jfrffnet;

    Gradients grads;
    grads.layers.resize(net.layers().size());
    RealMatrix upstream = loss_grad;
    for (std::size_t l = net.layers().size(); l-- > 0;) {
        const Layer& layer = net.layers()[l];
        const LayerTape& tape = pass.tapes[l];
        const LayerTransforms& t = (*pass.transforms)[l];
        if (t.graph_fwd_d.size() == 0 || (joint && t.time_fwd_d.size() == 0)) {
            throw ContractViolation("forward pass was run without derivative matrices");
        }
        LayerGradient& g = grads.layers[l];

        RealMatrix g_real = upstream;
        if (layer.activation == Activation::tanh) {
            g_real.array() *= 1.0 - tape.output.array().square();
        }
        // Re(.) passes the gradient into the real part only.
        const ComplexMatrix g3 = g_real.cast<Complex>();

        ComplexMatrix g2;
        ComplexMatrix g0;
        if (joint) {
            const ComplexMatrix x2_time = tape.x2 * t.time_inv.transpose();
            g.d_alpha = real_inner(g3, t.graph_inv_d * x2_time);
            g.d_beta = real_inner(g3, t.graph_inv * tape.x2 * t.time_inv_d.transpose());
            g2 = t.graph_inv.adjoint() * g3 * t.time_inv.conjugate();
            g.d_filter = g2.cwiseProduct(tape.x1.conjugate());
            const ComplexMatrix g1 = g2.cwiseProduct(layer.filter.conjugate());
            const ComplexMatrix xc = tape.input.cast<Complex>();
            g.d_alpha += real_inner(g1, t.graph_fwd_d * xc * t.time_fwd.transpose());
            g.d_beta += real_inner(g1, t.graph_fwd * xc * t.time_fwd_d.transpose());
            g0 = t.graph_fwd.adjoint() * g1 * t.time_fwd.conjugate();
        } else {
            g.d_alpha = real_inner(g3, t.graph_inv_d * tape.x2);
            g2 = t.graph_inv.adjoint() * g3;
            g.d_filter = g2.cwiseProduct(tape.x1.conjugate()).rowwise().sum();
            const ComplexMatrix g1 = g2.array().colwise() * layer.filter.col(0).conjugate().array();
            g.d_alpha += real_inner(g1, t.graph_fwd_d * tape.input.cast<Complex>());
            g0 = t.graph_fwd.adjoint() * g1;
        }
        upstream = g0.real();
    }
    grads.d_input = std::move(upstream);
    return grads;
}

double mse_loss(const RealMatrix& pred, const RealMatrix& clean) {
    if (pred.rows() != clean.rows() || pred.cols() != clean.cols()) {
        throw InvalidArgument("mse_loss: shape mismatch");
    }
    return (pred - clean).squaredNorm() / static_cast<double>(pred.size());
}

RealMatrix mse_gradient(const RealMatrix& pred, const RealMatrix& clean) {
    if (pred.rows() != clean.rows() || pred.cols() != clean.cols()) {
        throw InvalidArgument("mse_gradient: shape mismatch");
    }
    return (2.0 / static_cast<double>(pred.size())) * (pred - clean);
}

}  // namespace jfrf
