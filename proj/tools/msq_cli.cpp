// Command-line driver: train the variational strategy, verify stored
// parameters, print the classical brute-force bound, or print the value
// Hamiltonian spectrum. Exit status: 0 success, 1 usage error, 2 numerical
// failure.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "msq/dense.hpp"
#include "msq/game.hpp"
#include "msq/io.hpp"
#include "msq/train.hpp"
#include "msq/verify.hpp"

namespace {

int run_train(const std::string& config_path, const std::string& out_override,
              bool seed_given, std::uint64_t seed_override) {
    msq::RunConfig config;
    if (!config_path.empty()) config = msq::load_run_config(config_path);
    if (!out_override.empty()) config.out_dir = out_override;
    if (seed_given) config.seed = seed_override;

    std::cout << "training: layers=" << config.layers << " lr=" << msq::format_double(config.learning_rate)
              << " iterations=" << config.iterations << " seed=" << config.seed << "\n";

    const msq::TrainTrace trace = msq::train(config.train_config());

    const std::filesystem::path out_dir(config.out_dir);
    msq::write_text_file(out_dir / "history.csv", msq::history_csv(trace));
    msq::write_text_file(out_dir / "params.json", msq::params_document(config, trace));

    std::cout << "final cost: " << msq::format_double(trace.final_cost) << "\n";
    std::cout << "game value: " << msq::format_double(msq::quantum_game_value(trace.final_cost))
              << "\n";
    std::cout << "wrote " << (out_dir / "history.csv").string() << "\n";
    std::cout << "wrote " << (out_dir / "params.json").string() << "\n";
    return 0;
}

int run_verify(const std::string& params_path, std::int64_t shots, std::uint64_t seed,
               const std::string& out_dir_arg) {
    const msq::StoredParams stored = msq::load_params_file(params_path);

    const msq::StateVector state = msq::prepare_bell_stack();
    const msq::GameSpec spec = msq::GameSpec::standard();

    const double recomputed = msq::cost(state, spec, stored.params);
    if (std::abs(recomputed - stored.final_cost) > 1e-12)
        std::cerr << "warning: stored final cost " << msq::format_double(stored.final_cost)
                  << " differs from recomputed " << msq::format_double(recomputed) << "\n";

    msq::TrainTrace trace;  // parameters only; series stay empty
    trace.params = stored.params;
    trace.final_cost = recomputed;

    const msq::GridReport grid = msq::expectation_grid(state, spec, stored.params);
    const msq::CommutatorReport comms = msq::commutator_report(spec, stored.params);
    const msq::WinRateReport wins = msq::sampled_win_rate(state, spec, stored.params, shots, seed);
    const msq::ParityReport parity =
        msq::parity_and_intersection(state, spec, stored.params, shots, seed);
    msq::VerificationReport report = msq::assemble_report(grid, comms, wins, parity, trace);
    report.trained_iterations = stored.iterations;  // the series itself is not stored

    const std::filesystem::path out_dir(out_dir_arg);
    msq::write_text_file(out_dir / "report.json", msq::report_document(report));

    std::cout << "final cost: " << msq::format_double(report.final_cost) << "\n";
    std::cout << "game value: " << msq::format_double(report.game_value) << "\n";
    std::cout << "overall win rate: " << msq::format_double(report.win_rate.overall) << "\n";
    std::cout << "wrote " << (out_dir / "report.json").string() << "\n";
    return 0;
}

int run_classical() {
    const msq::ClassicalValue result = msq::classical_value_bruteforce();
    std::cout << "classical value: " << result.best_wins << "/9 = "
              << msq::format_double(result.value()) << "\n";
    std::cout << "optimal deterministic pairs: " << result.optimum_count << " of "
              << result.pairs_examined << "\n";
    return 0;
}

int run_spectrum() {
    const msq::Matrix h = msq::value_hamiltonian(msq::GameSpec::standard());
    const Eigen::VectorXd eigenvalues = msq::hermitian_eigenvalues(h);
    const double min_eig = eigenvalues(0), max_eig = eigenvalues(eigenvalues.size() - 1);
    int dim = 0;
    for (Eigen::Index k = 0; k < eigenvalues.size(); ++k)
        if (eigenvalues(k) - min_eig < 1e-6) ++dim;
    std::cout << "min eigenvalue: " << msq::format_double(min_eig) << "\n";
    std::cout << "max eigenvalue: " << msq::format_double(max_eig) << "\n";
    std::cout << "min eigenspace dimension: " << dim << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Variational strategy trainer for the 3x3 Magic Square Game"};
    app.require_subcommand(1);

    std::string config_path, out_override, params_path, verify_out = "out";
    std::uint64_t seed = 1;
    std::int64_t shots = 10000;

    CLI::App* train = app.add_subcommand("train", "minimize the value Hamiltonian");
    train->add_option("--config", config_path, "JSON config file");
    train->add_option("--out", out_override, "output directory (overrides config out_dir)");
    CLI::Option* seed_opt = train->add_option("--seed", seed, "seed override");

    CLI::App* verify = app.add_subcommand("verify", "verify stored parameters");
    verify->add_option("--params", params_path, "parameters file written by train")->required();
    verify->add_option("--shots", shots, "shots per input");
    verify->add_option("--seed", seed, "sampling seed");
    verify->add_option("--out", verify_out, "output directory");

    app.add_subcommand("classical", "brute-force classical value");
    app.add_subcommand("spectrum", "value Hamiltonian spectrum");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand("train"))
            return run_train(config_path, out_override, seed_opt->count() > 0, seed);
        if (app.got_subcommand("verify")) return run_verify(params_path, shots, seed, verify_out);
        if (app.got_subcommand("classical")) return run_classical();
        return run_spectrum();
    } catch (const msq::numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
