#pragma once

// The trainable strategy: one layered entangling circuit per game input
// (U_0..U_2 for Alice's rows, V_0..V_2 for Bob's columns), the cost
// <H~> = -sum <A_i~ (x) B_j~>, and its exact parameter-shift gradient.

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "msq/game.hpp"
#include "msq/rng.hpp"
#include "msq/statevector.hpp"

namespace msq {

struct AnsatzShape {
    int layers = 3;
    static constexpr int qubits = 3;
    static constexpr int angles_per_qubit = 3;  // Euler Z-Y-Z

    int params_per_unitary() const { return layers * qubits * angles_per_qubit; }
    int total_params() const { return 6 * params_per_unitary(); }
};

// All six unitaries' angles in one flat tensor, laid out
// [player][input][layer][qubit][angle] with Alice as player 0.
struct ParamSet {
    int layers = 0;
    std::vector<double> values;

    static ParamSet zeros(int layers) {
        ParamSet p;
        p.layers = layers;
        p.values.assign(static_cast<std::size_t>(AnsatzShape{layers}.total_params()), 0.0);
        return p;
    }

    // Standard-normal initialization; consumption order is the flat layout.
    static ParamSet random_normal(int layers, std::uint64_t seed) {
        ParamSet p = zeros(layers);
        Rng rng(seed);
        for (double& v : p.values) v = rng.normal();
        return p;
    }

    AnsatzShape shape() const { return AnsatzShape{layers}; }
    std::size_t size() const { return values.size(); }

    std::span<const double> unitary_block(int player, int input) const {
        const std::size_t n = static_cast<std::size_t>(shape().params_per_unitary());
        return {values.data() + (static_cast<std::size_t>(player) * 3 + static_cast<std::size_t>(input)) * n, n};
    }

    // Which (player, input) block a flat coordinate belongs to.
    std::pair<int, int> owner(std::size_t coordinate) const {
        const std::size_t n = static_cast<std::size_t>(shape().params_per_unitary());
        const std::size_t unit = coordinate / n;
        return {static_cast<int>(unit / 3), static_cast<int>(unit % 3)};
    }

    bool operator==(const ParamSet& other) const {
        return layers == other.layers && values == other.values;
    }
};

// One layer: Euler Z-Y-Z rotations on each qubit, then a CNOT ring with
// range r_l = (l mod 2) + 1, i.e. control q targets (q + r_l) mod 3.
inline std::vector<Gate> build_unitary_circuit(std::span<const double> params,
                                               const AnsatzShape& shape) {
    if (shape.layers < 0) throw std::invalid_argument("build_unitary_circuit: negative layers");
    if (params.size() != static_cast<std::size_t>(shape.params_per_unitary()))
        throw std::invalid_argument("build_unitary_circuit: parameter count does not match shape");
    std::vector<Gate> gates;
    gates.reserve(static_cast<std::size_t>(shape.layers) * 12);
    std::size_t k = 0;
    for (int l = 0; l < shape.layers; ++l) {
        for (int q = 0; q < 3; ++q) {
            gates.push_back(Gate::rz(q, params[k++]));
            gates.push_back(Gate::ry(q, params[k++]));
            gates.push_back(Gate::rz(q, params[k++]));
        }
        const int range = (l % 2) + 1;
        for (int q = 0; q < 3; ++q) gates.push_back(Gate::cnot(q, (q + range) % 3));
    }
    return gates;
}

namespace detail {

inline std::vector<Gate> circuit_for(const ParamSet& params, int player, int input) {
    return build_unitary_circuit(params.unitary_block(player, input), params.shape());
}

// <base with extra circuit applied at qubit_offset | obs | same>
inline double shifted_term(const StateVector& base, std::span<const Gate> gates, int qubit_offset,
                           const PauliString& obs) {
    StateVector s = base;
    apply_circuit_in_place(s, gates, qubit_offset);
    return expectation(s, obs);
}

}  // namespace detail

// <psi| A_i~ (x) B_j~ |psi>: U_i on qubits 0-2, V_j on qubits 3-5, then the
// fixed joint observable.
inline double rotated_expectation(const StateVector& state, const GameSpec& spec,
                                  const ParamSet& params, int i, int j) {
    const PauliString obs = joint_observable(spec, i, j);  // validates i, j
    StateVector s = state;
    const std::vector<Gate> u = detail::circuit_for(params, 0, i);
    const std::vector<Gate> v = detail::circuit_for(params, 1, j);
    apply_circuit_in_place(s, u, 0);
    apply_circuit_in_place(s, v, 3);
    return expectation(s, obs);
}

// cost = <H~> = -(sum of the nine rotated expectations), in [-9, 9].
inline double cost(const StateVector& state, const GameSpec& spec, const ParamSet& params) {
    double total = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) total += rotated_expectation(state, spec, params, i, j);
    return -total;
}

// Exact two-point parameter-shift gradient. Shifting one angle changes only
// one unitary, so only the three cost terms through that unitary are
// re-evaluated against states with the partner circuit pre-applied.
inline ParamSet gradient(const StateVector& state, const GameSpec& spec, const ParamSet& params) {
    ParamSet grad = ParamSet::zeros(params.layers);
    if (params.values.empty()) return grad;

    std::array<StateVector, 3> with_alice, with_bob;
    std::array<std::vector<Gate>, 3> alice_gates, bob_gates;
    for (int k = 0; k < 3; ++k) {
        alice_gates[k] = detail::circuit_for(params, 0, k);
        bob_gates[k] = detail::circuit_for(params, 1, k);
        with_alice[k] = state;
        apply_circuit_in_place(with_alice[k], alice_gates[k], 0);
        with_bob[k] = state;
        apply_circuit_in_place(with_bob[k], bob_gates[k], 3);
    }

    ParamSet shifted = params;
    for (std::size_t c = 0; c < params.size(); ++c) {
        const auto [player, input] = params.owner(c);
        double derivative = 0.0;
        for (const double shift : {M_PI / 2, -M_PI / 2}) {
            shifted.values[c] = params.values[c] + shift;
            const std::vector<Gate> gates =
                build_unitary_circuit(shifted.unitary_block(player, input), params.shape());
            double sum = 0.0;
            for (int other = 0; other < 3; ++other) {
                if (player == 0) {
                    // Alice coordinate: terms (input, other) on states with V_other applied.
                    sum += detail::shifted_term(with_bob[other], gates, 0,
                                                joint_observable(spec, input, other));
                } else {
                    sum += detail::shifted_term(with_alice[other], gates, 3,
                                                joint_observable(spec, other, input));
                }
            }
            derivative += (shift > 0 ? -sum : sum);  // cost carries the minus sign
        }
        shifted.values[c] = params.values[c];
        grad.values[c] = derivative / 2.0;
    }
    return grad;
}

}  // namespace msq
