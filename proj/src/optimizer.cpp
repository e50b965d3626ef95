#include "jfrf/optimizer.hpp"

#include <cmath>

#include "jfrf/errors.hpp"

namespace jfrf {

AdamState AdamState::zeros(Index size) {
    return AdamState{RealVector::Zero(size), RealVector::Zero(size), 0};
}

void adam_step(RealVector& params, const RealVector& grads, const std::vector<bool>& decay_mask,
               AdamState& state, const AdamConfig& config) {
    const Index n = params.size();
    if (grads.size() != n || state.m.size() != n || state.v.size() != n) {
        throw InvalidArgument("adam_step: parameter, gradient and state sizes differ");
    }
    if (!decay_mask.empty() && static_cast<Index>(decay_mask.size()) != n) {
        throw InvalidArgument("adam_step: decay mask has the wrong length");
    }
    ++state.step;
    const double correction1 = 1.0 - std::pow(config.beta1, static_cast<double>(state.step));
    const double correction2 = 1.0 - std::pow(config.beta2, static_cast<double>(state.step));
    for (Index i = 0; i < n; ++i) {
        double g = grads(i);
        if (decay_mask.empty() || decay_mask[static_cast<std::size_t>(i)]) {
            g += config.weight_decay * params(i);
        }
        state.m(i) = config.beta1 * state.m(i) + (1.0 - config.beta1) * g;
        state.v(i) = config.beta2 * state.v(i) + (1.0 - config.beta2) * g * g;
        const double m_hat = state.m(i) / correction1;
        const double v_hat = state.v(i) / correction2;
        params(i) -= config.learning_rate * m_hat / (std::sqrt(v_hat) + config.eps);
    }
}

}  // namespace jfrf
