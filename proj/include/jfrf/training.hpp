#pragma once

#include <cstdint>
#include <vector>

#include "jfrf/data.hpp"
#include "jfrf/network.hpp"
#include "jfrf/optimizer.hpp"

namespace jfrf {

struct TrainConfig {
    double learning_rate = 1e-3;
    double weight_decay = 1e-3;
    int max_epochs = 500;
    int patience = 50;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_eps = 1e-8;
    std::uint64_t seed = 0;
    std::size_t batch_size = 0;  // 0 = full batch

    void validate() const;
    AdamConfig adam() const;
};

struct EpochRecord {
    int epoch = 0;
    double train_loss = 0.0;
    double val_snr_db = 0.0;
    std::vector<double> alphas;
    std::vector<double> betas;
};

struct TrainHistory {
    double initial_val_snr_db = 0.0;
    std::vector<EpochRecord> epochs;
    int best_epoch = 0;  // 0 = the initial parameters were never beaten
    double best_val_snr_db = 0.0;
};

/// Runs the network over every noisy sample.
std::vector<RealMatrix> denoise(const Network& net, const std::vector<RealMatrix>& noisy);

/// Mean MSE loss and its averaged gradient over the listed samples.
struct BatchResult {
    double loss = 0.0;
    Gradients gradients;
};
BatchResult batch_gradient(const Network& net, const SampleSet& data,
                           const std::vector<std::size_t>& indices);

/// Adam training with per-epoch validation SNR, early stopping after
/// `patience` epochs without improvement, and restoration of the best
/// snapshot (the untrained parameters count as epoch 0).
TrainHistory train(Network& net, const SampleSet& train_set, const SampleSet& val_set,
                   const TrainConfig& config);

}  // namespace jfrf
