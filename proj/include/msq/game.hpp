#pragma once

// The 3x3 Magic Square Game: fixed row/column observables, winning
// projectors, the value Hamiltonian whose ground energy -9 encodes a perfect
// strategy, and the exact classical bound by brute force.

#include <array>
#include <cstdint>
#include <stdexcept>

#include "msq/dense.hpp"
#include "msq/pauli.hpp"
#include "msq/statevector.hpp"

namespace msq {

struct GameSpec {
    std::array<PauliString, 3> rows;  // Alice's A_0, A_1, A_2
    std::array<PauliString, 3> cols;  // Bob's B_0, B_1, B_2
    // Inputs (i, j) are uniform: pi(i, j) = 1/9.

    static GameSpec standard() {
        return GameSpec{
            {PauliString::from_text("ZZX"), PauliString::from_text("XZZ"),
             PauliString::from_text("ZXZ")},
            {PauliString::from_text("XZZ"), PauliString::from_text("ZXZ"),
             PauliString::from_text("ZZX")},
        };
    }
};

// Joint observable A_i (x) B_j over the full 6-qubit register.
inline PauliString joint_observable(const GameSpec& spec, int i, int j) {
    if (i < 0 || i > 2 || j < 0 || j > 2)
        throw std::out_of_range("joint_observable: input index out of range");
    return tensor(spec.rows[static_cast<std::size_t>(i)], spec.cols[static_cast<std::size_t>(j)]);
}

// Win projector (I + A_i (x) B_j) / 2: rank-32 spectral projector onto the
// +1 eigenspace of the joint observable.
inline Matrix win_projector(const GameSpec& spec, int i, int j) {
    Matrix m = dense(joint_observable(spec, i, j));
    return (Matrix::Identity(64, 64) + m) / 2.0;
}

// H = -sum_{i,j} A_i (x) B_j. Minimum eigenvalue -9 with multiplicity 2.
inline Matrix value_hamiltonian(const GameSpec& spec) {
    Matrix h = Matrix::Zero(64, 64);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) h -= dense(joint_observable(spec, i, j));
    return h;
}

// Affine map from cost = <H~> to the uniform-average winning probability.
inline double quantum_game_value(double cost) {
    // Guard band covers floating-point residue at the exact endpoints.
    constexpr double slack = 1e-9;
    if (!(cost >= -9.0 - slack && cost <= 9.0 + slack))
        throw std::out_of_range("quantum_game_value: cost outside [-9, 9]");
    double value = 0.5 - cost / 18.0;
    return std::min(1.0, std::max(0.0, value));
}

// One deterministic parity-respecting strategy pair. Bits b in {0,1} carry
// values (-1)^b; Alice's row bits multiply to +1 (even weight), Bob's column
// bits to -1 (odd weight).
struct ClassicalStrategy {
    std::array<std::uint8_t, 3> alice;  // alice[i] = 3-bit assignment for row i, bit k = column k
    std::array<std::uint8_t, 3> bob;    // bob[j] = 3-bit assignment for column j, bit k = row k

    static bool row_valid(std::uint8_t bits) { return __builtin_parity(bits & 7u) == 0; }
    static bool col_valid(std::uint8_t bits) { return __builtin_parity(bits & 7u) == 1; }
};

struct ClassicalValue {
    int best_wins = 0;        // out of 9 inputs
    int optimum_count = 0;    // strategy pairs attaining best_wins
    int pairs_examined = 0;   // always 4096
    double value() const { return best_wins / 9.0; }
};

// Exhaust all 4 x 4 x 4 Alice by 4 x 4 x 4 Bob parity-respecting deterministic
// strategies; a pair wins input (i, j) when Alice's column-j bit of row i
// equals Bob's row-i bit of column j.
inline ClassicalValue classical_value_bruteforce() {
    std::array<std::uint8_t, 4> row_choices{}, col_choices{};
    int nr = 0, nc = 0;
    for (std::uint8_t b = 0; b < 8; ++b) {
        if (ClassicalStrategy::row_valid(b)) row_choices[static_cast<std::size_t>(nr++)] = b;
        if (ClassicalStrategy::col_valid(b)) col_choices[static_cast<std::size_t>(nc++)] = b;
    }

    ClassicalValue result;
    for (int a0 = 0; a0 < 4; ++a0)
        for (int a1 = 0; a1 < 4; ++a1)
            for (int a2 = 0; a2 < 4; ++a2) {
                const std::array<std::uint8_t, 3> alice{row_choices[a0], row_choices[a1],
                                                        row_choices[a2]};
                for (int b0 = 0; b0 < 4; ++b0)
                    for (int b1 = 0; b1 < 4; ++b1)
                        for (int b2 = 0; b2 < 4; ++b2) {
                            const std::array<std::uint8_t, 3> bob{col_choices[b0], col_choices[b1],
                                                                  col_choices[b2]};
                            ++result.pairs_examined;
                            int wins = 0;
                            for (int i = 0; i < 3; ++i)
                                for (int j = 0; j < 3; ++j) {
                                    const int abit = (alice[i] >> j) & 1;
                                    const int bbit = (bob[j] >> i) & 1;
                                    wins += (abit == bbit);
                                }
                            if (wins > result.best_wins) {
                                result.best_wins = wins;
                                result.optimum_count = 1;
                            } else if (wins == result.best_wins) {
                                ++result.optimum_count;
                            }
                        }
            }
    return result;
}

}  // namespace msq
