#pragma once

// Adam training loop over the full 162-parameter strategy. Deterministic:
// a (config, seed) pair fixes every float in the trace bit for bit.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "msq/ansatz.hpp"
#include "msq/game.hpp"
#include "msq/statevector.hpp"

namespace msq {

// Raised when a cost or gradient stops being finite; the CLI maps it to a
// dedicated exit status.
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TrainConfig {
    double learning_rate = 0.1;
    int iterations = 200;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    std::uint64_t seed = 1;
    int layers = 3;

    void validate() const {
        if (!(learning_rate > 0)) throw std::invalid_argument("TrainConfig: learning_rate must be > 0");
        if (iterations < 0) throw std::invalid_argument("TrainConfig: iterations must be >= 0");
        if (layers < 0) throw std::invalid_argument("TrainConfig: layers must be >= 0");
        if (!(beta1 >= 0 && beta1 < 1) || !(beta2 >= 0 && beta2 < 1))
            throw std::invalid_argument("TrainConfig: moment decays must lie in [0, 1)");
        if (!(epsilon > 0)) throw std::invalid_argument("TrainConfig: epsilon must be > 0");
    }
};

struct TrainTrace {
    // Row t (1-based) holds the cost after update t, the gradient norm at the
    // pre-update point, and the L2 norm of the parameter update.
    std::vector<double> costs;
    std::vector<double> gradient_norms;
    std::vector<double> update_norms;
    ParamSet params;     // final iterate
    double final_cost = 0.0;
};

namespace detail {

inline double l2_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

inline void require_finite(double x, const char* what, int iteration) {
    if (!std::isfinite(x))
        throw numerical_error(std::string(what) + " became non-finite at iteration " +
                              std::to_string(iteration));
}

}  // namespace detail

// Warm-start variant: run Adam from the given initial parameters.
inline TrainTrace train(const TrainConfig& config, ParamSet params) {
    config.validate();
    if (params.layers != config.layers)
        throw std::invalid_argument("train: initial parameters do not match configured layers");

    const StateVector state = prepare_bell_stack();
    const GameSpec spec = GameSpec::standard();

    TrainTrace trace;
    trace.costs.reserve(static_cast<std::size_t>(config.iterations));
    trace.gradient_norms.reserve(static_cast<std::size_t>(config.iterations));
    trace.update_norms.reserve(static_cast<std::size_t>(config.iterations));

    std::vector<double> m(params.size(), 0.0), v(params.size(), 0.0);
    for (int t = 1; t <= config.iterations; ++t) {
        const ParamSet grad = gradient(state, spec, params);
        for (double g : grad.values) detail::require_finite(g, "gradient", t);

        double update_sq = 0.0;
        const double bias1 = 1.0 - std::pow(config.beta1, t);
        const double bias2 = 1.0 - std::pow(config.beta2, t);
        for (std::size_t c = 0; c < params.size(); ++c) {
            const double g = grad.values[c];
            m[c] = config.beta1 * m[c] + (1.0 - config.beta1) * g;
            v[c] = config.beta2 * v[c] + (1.0 - config.beta2) * g * g;
            const double step =
                config.learning_rate * (m[c] / bias1) / (std::sqrt(v[c] / bias2) + config.epsilon);
            params.values[c] -= step;
            update_sq += step * step;
        }

        const double c = cost(state, spec, params);
        detail::require_finite(c, "cost", t);
        trace.costs.push_back(c);
        trace.gradient_norms.push_back(detail::l2_norm(grad.values));
        trace.update_norms.push_back(std::sqrt(update_sq));
    }

    trace.final_cost = trace.costs.empty() ? cost(state, spec, params) : trace.costs.back();
    detail::require_finite(trace.final_cost, "cost", config.iterations);
    trace.params = std::move(params);
    return trace;
}

// Standard entry point: angles initialized from the standard normal
// distribution with the config seed.
inline TrainTrace train(const TrainConfig& config) {
    config.validate();
    return train(config, ParamSet::random_normal(config.layers, config.seed));
}

}  // namespace msq
