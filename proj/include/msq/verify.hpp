#pragma once

// Post-training verification: expectation grid and marginals, rotated
// commutator norms, and sampled statistics (win rate, parity products,
// intersection agreement). Every component records a digest of the
// parameters it was computed from so a report cannot mix provenances.

#include <array>
#include <cstdint>
#include <cstring>
#include <stdexcept>

#include "msq/ansatz.hpp"
#include "msq/game.hpp"
#include "msq/rng.hpp"
#include "msq/statevector.hpp"
#include "msq/train.hpp"

namespace msq {

// FNV-1a over the layer count and the raw angle bytes.
inline std::uint64_t param_digest(const ParamSet& params) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    auto mix_bytes = [&h](const void* data, std::size_t size) {
        const auto* bytes = static_cast<const unsigned char*>(data);
        for (std::size_t k = 0; k < size; ++k) {
            h ^= bytes[k];
            h *= 0x100000001B3ULL;
        }
    };
    const std::int64_t layers = params.layers;
    mix_bytes(&layers, sizeof(layers));
    if (!params.values.empty())
        mix_bytes(params.values.data(), params.values.size() * sizeof(double));
    return h;
}

struct GridReport {
    std::array<std::array<double, 3>, 3> grid{};  // <A_i~ (x) B_j~>
    std::array<double, 3> alice_marginals{};      // <A_i~ (x) I>
    std::array<double, 3> bob_marginals{};        // <I (x) B_j~>
    std::uint64_t params_digest = 0;
};

inline GridReport expectation_grid(const StateVector& state, const GameSpec& spec,
                                   const ParamSet& params) {
    GridReport report;
    report.params_digest = param_digest(params);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            report.grid[i][j] = rotated_expectation(state, spec, params, i, j);

    const PauliString identity3 = PauliString::from_text("III");
    for (int i = 0; i < 3; ++i) {
        StateVector s = state;
        apply_circuit_in_place(s, detail::circuit_for(params, 0, i), 0);
        report.alice_marginals[i] = expectation(s, tensor(spec.rows[i], identity3));
    }
    for (int j = 0; j < 3; ++j) {
        StateVector s = state;
        apply_circuit_in_place(s, detail::circuit_for(params, 1, j), 3);
        report.bob_marginals[j] = expectation(s, tensor(identity3, spec.cols[j]));
    }
    return report;
}

struct CommutatorReport {
    // Pair order (0,1), (0,2), (1,2) for each player.
    std::array<double, 3> alice{};
    std::array<double, 3> bob{};
    std::uint64_t params_digest = 0;
};

// Frobenius norms of the pairwise commutators of the dense rotated
// observables U_i^dag A_i U_i (and Bob's counterparts). Reported, never
// asserted: the cost minimum does not force these to vanish at finite
// tolerance.
inline CommutatorReport commutator_report(const GameSpec& spec, const ParamSet& params) {
    CommutatorReport report;
    report.params_digest = param_digest(params);
    std::array<Matrix, 3> alice_ops, bob_ops;
    for (int k = 0; k < 3; ++k) {
        const Matrix u = dense_unitary(detail::circuit_for(params, 0, k), 3);
        const Matrix v = dense_unitary(detail::circuit_for(params, 1, k), 3);
        alice_ops[k] = u.adjoint() * dense(spec.rows[k]) * u;
        bob_ops[k] = v.adjoint() * dense(spec.cols[k]) * v;
    }
    int slot = 0;
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b, ++slot) {
            report.alice[slot] = commutator_norm(alice_ops[a], alice_ops[b]);
            report.bob[slot] = commutator_norm(bob_ops[a], bob_ops[b]);
        }
    return report;
}

namespace detail {

struct InputSampleStats {
    double win_rate = 0.0;        // fraction with a * b = +1
    double alice_plus = 0.0;      // fraction with a = +1
    double bob_plus = 0.0;        // fraction with b = +1
    double intersection = 0.0;    // fraction where the shared cell agrees
};

// One input (i, j): apply U_i and V_j, then jointly sample the six rotated
// site observables. Alice's per-cell answers for row i are the site outcomes
// of A_i's letters; the shared cell compares her position-j outcome with
// Bob's position-i outcome.
inline InputSampleStats sample_input(const StateVector& state, const GameSpec& spec,
                                     const ParamSet& params, int i, int j, std::int64_t shots,
                                     std::uint64_t seed) {
    StateVector s = state;
    apply_circuit_in_place(s, circuit_for(params, 0, i), 0);
    apply_circuit_in_place(s, circuit_for(params, 1, j), 3);

    std::array<SiteObservable, 3> alice_sites, bob_sites;
    for (int k = 0; k < 3; ++k) {
        alice_sites[k] = {k, spec.rows[i].letter(k)};
        bob_sites[k] = {3 + k, spec.cols[j].letter(k)};
    }

    const std::vector<Outcome> outcomes = sample_joint(s, alice_sites, bob_sites, shots, seed);
    InputSampleStats stats;
    for (const Outcome& o : outcomes) {
        const int a = o.alice_product(), b = o.bob_product();
        stats.win_rate += (a * b == 1);
        stats.alice_plus += (a == 1);
        stats.bob_plus += (b == 1);
        stats.intersection += (o.values[j] == o.values[3 + i]);
    }
    const double n = static_cast<double>(outcomes.size());
    if (n > 0) {
        stats.win_rate /= n;
        stats.alice_plus /= n;
        stats.bob_plus /= n;
        stats.intersection /= n;
    }
    return stats;
}

}  // namespace detail

struct WinRateReport {
    std::array<std::array<double, 3>, 3> per_input{};
    double overall = 0.0;
    std::int64_t shots_per_input = 0;
    std::uint64_t seed = 0;
    std::uint64_t params_digest = 0;
};

struct ParityReport {
    // Empirical distribution of the three-site +-1 products per input, under
    // the convention: bits map to values (-1)^b, Alice's row target product
    // is +1, Bob's column target product is -1.
    std::array<std::array<double, 3>, 3> alice_plus_fraction{};
    std::array<std::array<double, 3>, 3> bob_plus_fraction{};
    std::array<std::array<double, 3>, 3> intersection_agreement{};
    std::int64_t shots_per_input = 0;
    std::uint64_t seed = 0;
    std::uint64_t params_digest = 0;
};

// Input (i, j) draws its shots from derive_seed(seed, 3i + j), so the two
// sampled reports below see identical outcome streams for the same seed.
inline WinRateReport sampled_win_rate(const StateVector& state, const GameSpec& spec,
                                      const ParamSet& params, std::int64_t shots_per_input,
                                      std::uint64_t seed) {
    if (shots_per_input < 1) throw std::invalid_argument("sampled_win_rate: shots must be >= 1");
    WinRateReport report;
    report.shots_per_input = shots_per_input;
    report.seed = seed;
    report.params_digest = param_digest(params);
    double total = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const auto stats = detail::sample_input(state, spec, params, i, j, shots_per_input,
                                                    derive_seed(seed, static_cast<std::uint64_t>(3 * i + j)));
            report.per_input[i][j] = stats.win_rate;
            total += stats.win_rate;
        }
    report.overall = total / 9.0;
    return report;
}

inline ParityReport parity_and_intersection(const StateVector& state, const GameSpec& spec,
                                            const ParamSet& params, std::int64_t shots_per_input,
                                            std::uint64_t seed) {
    if (shots_per_input < 1)
        throw std::invalid_argument("parity_and_intersection: shots must be >= 1");
    ParityReport report;
    report.shots_per_input = shots_per_input;
    report.seed = seed;
    report.params_digest = param_digest(params);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const auto stats = detail::sample_input(state, spec, params, i, j, shots_per_input,
                                                    derive_seed(seed, static_cast<std::uint64_t>(3 * i + j)));
            report.alice_plus_fraction[i][j] = stats.alice_plus;
            report.bob_plus_fraction[i][j] = stats.bob_plus;
            report.intersection_agreement[i][j] = stats.intersection;
        }
    return report;
}

struct VerificationReport {
    GridReport grid;
    CommutatorReport commutators;
    WinRateReport win_rate;
    ParityReport parity;
    double final_cost = 0.0;
    double game_value = 0.0;
    int trained_iterations = 0;
};

// Bundle the component reports; every component must have been computed from
// the trace's final parameters.
inline VerificationReport assemble_report(const GridReport& grid,
                                          const CommutatorReport& commutators,
                                          const WinRateReport& win_rate,
                                          const ParityReport& parity, const TrainTrace& trace) {
    const std::uint64_t digest = param_digest(trace.params);
    if (grid.params_digest != digest || commutators.params_digest != digest ||
        win_rate.params_digest != digest || parity.params_digest != digest)
        throw std::invalid_argument("assemble_report: mismatched parameter provenance");
    VerificationReport report;
    report.grid = grid;
    report.commutators = commutators;
    report.win_rate = win_rate;
    report.parity = parity;
    report.final_cost = trace.final_cost;
    report.game_value = quantum_game_value(trace.final_cost);
    report.trained_iterations = static_cast<int>(trace.costs.size());
    return report;
}

}  // namespace msq
