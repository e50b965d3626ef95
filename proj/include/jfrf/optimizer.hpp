#pragma once

#include <vector>

#include "jfrf/types.hpp"

namespace jfrf {

struct AdamConfig {
    double learning_rate = 1e-3;
    double weight_decay = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

struct AdamState {
    RealVector m;
    RealVector v;
    long step = 0;

    static AdamState zeros(Index size);
};

/// One bias-corrected Adam update in place. Weight decay is coupled
/// (added to the gradient before the moment updates) and only applies where
/// decay_mask is true; an empty mask means every entry decays.
void adam_step(RealVector& params, const RealVector& grads, const std::vector<bool>& decay_mask,
               AdamState& state, const AdamConfig& config);

}  // namespace jfrf
