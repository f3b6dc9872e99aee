#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "msq/verify.hpp"
#include "support.hpp"

using namespace msq;

TEST_CASE("parameter digests separate distinct parameter sets") {
    const ParamSet a = ParamSet::random_normal(2, 5);
    ParamSet b = a;
    CHECK(param_digest(a) == param_digest(b));
    b.values[0] += 1e-9;
    CHECK(param_digest(a) != param_digest(b));
    CHECK(param_digest(ParamSet::zeros(0)) != param_digest(ParamSet::zeros(1)));
}

TEST_CASE("untrained grid and marginals") {
    const StateVector s = prepare_bell_stack();
    const GameSpec spec = GameSpec::standard();
    const GridReport report = expectation_grid(s, spec, ParamSet::zeros(0));

    const double expected[3][3] = {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(report.grid[i][j] == Catch::Approx(expected[i][j]).margin(1e-12));
    for (int k = 0; k < 3; ++k) {
        CHECK(report.alice_marginals[k] == Catch::Approx(0.0).margin(1e-12));
        CHECK(report.bob_marginals[k] == Catch::Approx(0.0).margin(1e-12));
    }
}

TEST_CASE("grid sums to minus the cost") {
    const StateVector s = prepare_bell_stack();
    const GameSpec spec = GameSpec::standard();
    for (const ParamSet& p : {ParamSet::random_normal(3, 61), testing::perfect_params()}) {
        const GridReport report = expectation_grid(s, spec, p);
        double total = 0.0;
        for (const auto& row : report.grid)
            for (double e : row) {
                total += e;
                CHECK(std::abs(e) <= 1.0 + 1e-10);
            }
        CHECK(-total == Catch::Approx(cost(s, spec, p)).margin(1e-10));
        for (double m : report.alice_marginals) CHECK(std::abs(m) <= 1.0 + 1e-10);
        for (double m : report.bob_marginals) CHECK(std::abs(m) <= 1.0 + 1e-10);
    }
}

TEST_CASE("the exact-minimum parameters saturate the grid") {
    const StateVector s = prepare_bell_stack();
    const GameSpec spec = GameSpec::standard();
    const GridReport report = expectation_grid(s, spec, testing::perfect_params());
    for (const auto& row : report.grid)
        for (double e : row) CHECK(e >= 0.999);
}

TEST_CASE("commutator norms vanish for untouched and shared conjugations") {
    const GameSpec spec = GameSpec::standard();

    const CommutatorReport untrained = commutator_report(spec, ParamSet::zeros(0));
    for (int k = 0; k < 3; ++k) {
        CHECK(untrained.alice[k] < 1e-12);
        CHECK(untrained.bob[k] < 1e-12);
    }

    // Copy one random block into all three of Alice's inputs: a common
    // conjugation preserves the fixed operators' commutation.
    ParamSet shared = ParamSet::random_normal(2, 13);
    const std::size_t n = static_cast<std::size_t>(shared.shape().params_per_unitary());
    for (std::size_t input = 1; input < 3; ++input)
        for (std::size_t k = 0; k < n; ++k) shared.values[input * n + k] = shared.values[k];
    const CommutatorReport report = commutator_report(spec, shared);
    for (int k = 0; k < 3; ++k) CHECK(report.alice[k] < 1e-10);
}

TEST_CASE("sampled win rates for the untrained strategy") {
    const StateVector s = prepare_bell_stack();
    const GameSpec spec = GameSpec::standard();
    const std::int64_t shots = 10000;
    const WinRateReport report = sampled_win_rate(s, spec, ParamSet::zeros(0), shots, 17);

    CHECK(report.shots_per_input == shots);
    // Deterministic +1 correlation on the matched inputs.
    CHECK(report.per_input[0][2] == 1.0);
    CHECK(report.per_input[1][0] == 1.0);
    CHECK(report.per_input[2][1] == 1.0);
    // Zero-expectation input: the win rate concentrates around 1/2.
    CHECK(std::abs(report.per_input[0][0] - 0.5) < 2.0 / std::sqrt(static_cast<double>(shots)));

    // Each per-input rate tracks (1 + grid entry) / 2 within 5 / sqrt(shots).
    const GridReport grid = expectation_grid(s, spec, ParamSet::zeros(0));
    const double window = 5.0 / std::sqrt(static_cast<double>(shots));
    double mean = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            CHECK(std::abs(report.per_input[i][j] - (1.0 + grid.grid[i][j]) / 2.0) < window);
            mean += report.per_input[i][j];
        }
    CHECK(report.overall == Catch::Approx(mean / 9.0).margin(1e-15));
}

TEST_CASE("the exact-minimum parameters win every sampled round") {
    const StateVector s = prepare_bell_stack();
    const GameSpec spec = GameSpec::standard();
    const WinRateReport report = sampled_win_rate(s, spec, testing::perfect_params(), 2000, 23);
    CHECK(report.overall >= 0.999);
}

TEST_CASE("sampling validates the shot count") {
    const StateVector s = prepare_bell_stack();
    const GameSpec spec = GameSpec::standard();
    CHECK_THROWS_AS(sampled_win_rate(s, spec, ParamSet::zeros(0), 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(parity_and_intersection(s, spec, ParamSet::zeros(0), 0, 1),
                    std::invalid_argument);
}

TEST_CASE("sampled reports are deterministic in the seed") {
    const StateVector s = prepare_bell_stack();
    const GameSpec spec = GameSpec::standard();
    const ParamSet p = ParamSet::random_normal(1, 3);
    const WinRateReport a = sampled_win_rate(s, spec, p, 300, 77);
    const WinRateReport b = sampled_win_rate(s, spec, p, 300, 77);
    CHECK(a.per_input == b.per_input);
    CHECK(a.overall == b.overall);
    const WinRateReport c = sampled_win_rate(s, spec, p, 300, 78);
    CHECK_FALSE(a.per_input == c.per_input);
}

TEST_CASE("parity statistics and intersection agreement") {
    const StateVector s = prepare_bell_stack();
    const GameSpec spec = GameSpec::standard();

    const ParityReport single = parity_and_intersection(s, spec, ParamSet::zeros(0), 1, 5);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            // One shot: every empirical fraction is a point mass.
            for (double v : {single.alice_plus_fraction[i][j], single.bob_plus_fraction[i][j],
                             single.intersection_agreement[i][j]})
                CHECK((v == 0.0 || v == 1.0));
        }

    const std::int64_t shots = 4000;
    const ParityReport report = parity_and_intersection(s, spec, ParamSet::zeros(0), shots, 5);
    const double window = 5.0 / std::sqrt(static_cast<double>(shots));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            // Untrained marginals vanish, so each player's product is a coin.
            CHECK(std::abs(report.alice_plus_fraction[i][j] - 0.5) < window);
            CHECK(std::abs(report.bob_plus_fraction[i][j] - 0.5) < window);
            CHECK(report.intersection_agreement[i][j] >= 0.0);
            CHECK(report.intersection_agreement[i][j] <= 1.0);
        }
}

TEST_CASE("win rate and parity reports see the same outcome stream") {
    const StateVector s = prepare_bell_stack();
    const GameSpec spec = GameSpec::standard();
    const ParamSet p = ParamSet::zeros(0);
    const std::int64_t shots = 600;
    const WinRateReport wins = sampled_win_rate(s, spec, p, shots, 11);
    const ParityReport parity = parity_and_intersection(s, spec, p, shots, 11);
    // a*b = +1 iff both products are +1 or both are -1. On the shared stream
    // the identity holds shot by shot; the deterministic inputs make it exact
    // at the level of fractions for the matched cells.
    CHECK(wins.per_input[0][2] == 1.0);
    CHECK(parity.alice_plus_fraction[0][2] == parity.bob_plus_fraction[0][2]);
}

TEST_CASE("report assembly enforces provenance and maps the game value") {
    const StateVector s = prepare_bell_stack();
    const GameSpec spec = GameSpec::standard();
    const ParamSet p = ParamSet::zeros(0);

    TrainTrace trace;
    trace.params = p;
    trace.final_cost = cost(s, spec, p);

    const GridReport grid = expectation_grid(s, spec, p);
    const CommutatorReport comms = commutator_report(spec, p);
    const WinRateReport wins = sampled_win_rate(s, spec, p, 50, 2);
    const ParityReport parity = parity_and_intersection(s, spec, p, 50, 2);

    const VerificationReport report = assemble_report(grid, comms, wins, parity, trace);
    CHECK(report.final_cost == Catch::Approx(-3.0).margin(1e-12));
    CHECK(report.game_value == Catch::Approx(2.0 / 3.0).margin(1e-12));
    CHECK(report.trained_iterations == 0);

    // A component computed from different parameters is rejected.
    const GridReport foreign = expectation_grid(s, spec, ParamSet::random_normal(1, 1));
    CHECK_THROWS_AS(assemble_report(foreign, comms, wins, parity, trace), std::invalid_argument);
}
