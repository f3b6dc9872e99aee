#pragma once

// Shared test fixtures and generators.

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "msq/ansatz.hpp"
#include "msq/pauli.hpp"

namespace msq::testing {

inline PauliString random_string(std::mt19937_64& rng, std::size_t length,
                                 bool hermitian_only = false) {
    std::vector<PauliLetter> letters(length);
    for (auto& l : letters) l = static_cast<PauliLetter>(rng() % 4);
    const std::uint8_t phase =
        hermitian_only ? static_cast<std::uint8_t>(2 * (rng() % 2)) : static_cast<std::uint8_t>(rng() % 4);
    return PauliString(phase, std::move(letters));
}

// Angle triples (Z, Y, Z per our gate order) conjugating one Pauli letter
// onto +Z or -Z.
inline std::array<double, 3> letter_to_z(PauliLetter letter, int sign) {
    const double h = M_PI / 2;
    switch (letter) {
        case PauliLetter::Z: return sign > 0 ? std::array{0.0, 0.0, 0.0} : std::array{0.0, M_PI, 0.0};
        case PauliLetter::X: return sign > 0 ? std::array{0.0, h, 0.0} : std::array{0.0, -h, 0.0};
        case PauliLetter::Y: return sign > 0 ? std::array{0.0, h, h} : std::array{0.0, -h, h};
        default: return {0.0, 0.0, 0.0};
    }
}

struct SiteTarget {
    PauliLetter letter;
    int sign;
};

inline void fill_block(ParamSet& params, int player, int input,
                       const std::array<SiteTarget, 3>& sites) {
    const std::size_t n = static_cast<std::size_t>(params.shape().params_per_unitary());
    std::size_t base = (static_cast<std::size_t>(player) * 3 + static_cast<std::size_t>(input)) * n;
    for (int q = 0; q < 3; ++q) {
        const auto angles = letter_to_z(sites[q].letter, sites[q].sign);
        for (int a = 0; a < 3; ++a) params.values[base + static_cast<std::size_t>(3 * q + a)] = angles[a];
    }
}

// Exact global minimum of the cost for the 1-layer ansatz: each rotation
// sub-layer maps the CNOT-ring-conjugated fixed operator letterwise onto
// +-Z so that every rotated observable collapses to Z(x)Z(x)Z, making all
// nine joint expectations +1 on the Bell stack (cost exactly -9).
inline ParamSet perfect_params() {
    using L = PauliLetter;
    ParamSet p = ParamSet::zeros(1);
    // Ring-conjugated operators: A0 -> -YXY, A1 -> +XXZ, A2 -> +ZXX;
    // Bob's columns are the same strings in shifted order.
    fill_block(p, 0, 0, {{{L::Y, -1}, {L::X, 1}, {L::Y, 1}}});  // -YXY, signs multiply to -1
    fill_block(p, 0, 1, {{{L::X, 1}, {L::X, 1}, {L::Z, 1}}});
    fill_block(p, 0, 2, {{{L::Z, 1}, {L::X, 1}, {L::X, 1}}});
    fill_block(p, 1, 0, {{{L::X, 1}, {L::X, 1}, {L::Z, 1}}});
    fill_block(p, 1, 1, {{{L::Z, 1}, {L::X, 1}, {L::X, 1}}});
    fill_block(p, 1, 2, {{{L::Y, -1}, {L::X, 1}, {L::Y, 1}}});
    return p;
}

// Same construction with every Bob observable collapsed to -Z(x)Z(x)Z
// instead: all nine expectations -1, cost exactly +9.
inline ParamSet anti_params() {
    using L = PauliLetter;
    ParamSet p = perfect_params();
    fill_block(p, 1, 0, {{{L::X, -1}, {L::X, 1}, {L::Z, 1}}});
    fill_block(p, 1, 1, {{{L::Z, -1}, {L::X, 1}, {L::X, 1}}});
    fill_block(p, 1, 2, {{{L::Y, 1}, {L::X, 1}, {L::Y, 1}}});
    return p;
}

}  // namespace msq::testing
