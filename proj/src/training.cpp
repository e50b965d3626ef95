#include "jfrf/training.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "jfrf/errors.hpp"

namespace jfrf {

void TrainConfig::validate() const {
    if (!(learning_rate > 0.0)) throw InvalidArgument("learning rate must be positive");
    if (!(weight_decay >= 0.0)) throw InvalidArgument("weight decay must be non-negative");
    if (max_epochs < 1) throw InvalidArgument("max_epochs must be at least 1");
    if (patience < 0 || patience > max_epochs) {
        throw InvalidArgument("patience must lie in [0, max_epochs]");
    }
    if (!(adam_beta1 >= 0.0 && adam_beta1 < 1.0) || !(adam_beta2 >= 0.0 && adam_beta2 < 1.0) ||
        !(adam_eps > 0.0)) {
        throw InvalidArgument("invalid Adam constants");
    }
}

AdamConfig TrainConfig::adam() const {
    return AdamConfig{learning_rate, weight_decay, adam_beta1, adam_beta2, adam_eps};
}

std::vector<RealMatrix> denoise(const Network& net, const std::vector<RealMatrix>& noisy) {
    auto transforms = std::make_shared<const std::vector<LayerTransforms>>(net.transforms(false));
    std::vector<RealMatrix> out;
    out.reserve(noisy.size());
    for (const RealMatrix& y : noisy) out.push_back(network_forward(net, transforms, y).output);
    return out;
}

BatchResult batch_gradient(const Network& net, const SampleSet& data,
                           const std::vector<std::size_t>& indices) {
    if (indices.empty()) throw InvalidArgument("batch_gradient: empty batch");
    auto transforms = std::make_shared<const std::vector<LayerTransforms>>(net.transforms(true));
    BatchResult result;
    for (std::size_t i : indices) {
        const ForwardPass pass = network_forward(net, transforms, data.noisy.at(i));
        result.loss += mse_loss(pass.output, data.clean[i]);
        result.gradients += network_backward(net, pass, mse_gradient(pass.output, data.clean[i]));
    }
    const double inv = 1.0 / static_cast<double>(indices.size());
    result.loss *= inv;
    result.gradients *= inv;
    return result;
}

TrainHistory train(Network& net, const SampleSet& train_set, const SampleSet& val_set,
                   const TrainConfig& config) {
    config.validate();
    if (train_set.empty() || val_set.empty()) {
        throw InvalidArgument("training and validation sets must be non-empty");
    }
    train_set.validate();
    val_set.validate();

    const AdamConfig adam = config.adam();
    const std::vector<bool> mask = net.decay_mask();
    AdamState state = AdamState::zeros(net.real_parameter_count());

    TrainHistory history;
    history.initial_val_snr_db = snr_db(val_set.clean, denoise(net, val_set.noisy));
    history.best_val_snr_db = history.initial_val_snr_db;
    RealVector best_params = net.parameters();

    std::vector<std::size_t> order(train_set.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    const std::size_t batch =
        config.batch_size == 0 ? train_set.size() : std::min(config.batch_size, train_set.size());

    int stale = 0;
    for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
        if (batch < train_set.size()) {
            auto rng = substream(config.seed, "batching", static_cast<std::uint64_t>(epoch));
            std::shuffle(order.begin(), order.end(), rng);
        }
        double loss_sum = 0.0;
        bool diverged = false;
        for (std::size_t start = 0; start < order.size(); start += batch) {
            const std::size_t stop = std::min(order.size(), start + batch);
            const std::vector<std::size_t> indices(order.begin() + static_cast<std::ptrdiff_t>(start),
                                                   order.begin() + static_cast<std::ptrdiff_t>(stop));
            BatchResult step = batch_gradient(net, train_set, indices);
            loss_sum += step.loss * static_cast<double>(indices.size());
            RealVector params = net.parameters();
            adam_step(params, step.gradients.flatten(net.kind()), mask, state, adam);
            if (!std::isfinite(step.loss) || !params.allFinite()) {
                diverged = true;
                break;
            }
            net.set_parameters(params);
        }

        EpochRecord record;
        record.epoch = epoch;
        record.train_loss = loss_sum / static_cast<double>(train_set.size());
        record.val_snr_db = diverged ? -kSnrInfinite : snr_db(val_set.clean, denoise(net, val_set.noisy));
        for (const Layer& layer : net.layers()) {
            record.alphas.push_back(layer.alpha);
            record.betas.push_back(layer.beta);
        }
        history.epochs.push_back(record);

        if (record.val_snr_db > history.best_val_snr_db) {
            history.best_val_snr_db = record.val_snr_db;
            history.best_epoch = epoch;
            best_params = net.parameters();
            stale = 0;
        } else {
            ++stale;
        }
        if (diverged || stale >= config.patience) break;
    }
    net.set_parameters(best_params);
    return history;
}

}  // namespace jfrf
