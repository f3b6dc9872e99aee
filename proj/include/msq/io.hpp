#pragma once

// File formats: comma-separated history tables for time series and JSON for
// config, parameters, and verification reports. Every float is written in
// shortest round-trip form, so identical runs produce identical bytes.

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "msq/ansatz.hpp"
#include "msq/train.hpp"
#include "msq/verify.hpp"

namespace msq {

using Json = nlohmann::ordered_json;

// Shortest decimal form that parses back to the same double.
inline std::string format_double(double value) {
    char buffer[64];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
    return std::string(buffer, ptr);
}

inline std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

// ---- run configuration ----

struct RunConfig {
    std::uint64_t seed = 1;
    int layers = 3;
    double learning_rate = 0.1;
    int iterations = 200;
    std::int64_t shots_per_input = 10000;
    std::string out_dir = "out";

    TrainConfig train_config() const {
        TrainConfig c;
        c.learning_rate = learning_rate;
        c.iterations = iterations;
        c.seed = seed;
        c.layers = layers;
        return c;
    }
};

inline RunConfig parse_run_config(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw std::runtime_error(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::runtime_error("config must be a JSON object");

    RunConfig config;
    for (const auto& [key, value] : j.items()) {
        if (key == "seed") config.seed = value.get<std::uint64_t>();
        else if (key == "layers") config.layers = value.get<int>();
        else if (key == "learning_rate") config.learning_rate = value.get<double>();
        else if (key == "iterations") config.iterations = value.get<int>();
        else if (key == "shots_per_input") config.shots_per_input = value.get<std::int64_t>();
        else if (key == "out_dir") config.out_dir = value.get<std::string>();
        else throw std::runtime_error("config contains unknown key: " + key);
    }
    if (config.layers < 0) throw std::runtime_error("config: layers must be >= 0");
    if (config.iterations < 0) throw std::runtime_error("config: iterations must be >= 0");
    if (!(config.learning_rate > 0)) throw std::runtime_error("config: learning_rate must be > 0");
    if (config.shots_per_input < 1) throw std::runtime_error("config: shots_per_input must be >= 1");
    return config;
}

inline RunConfig load_run_config(const std::filesystem::path& path) {
    return parse_run_config(read_text_file(path));
}

// ---- history table ----

inline std::string history_csv(const TrainTrace& trace) {
    std::string out = "iteration,cost,grad_norm,update_norm\n";
    for (std::size_t t = 0; t < trace.costs.size(); ++t) {
        out += std::to_string(t + 1);
        out += ',';
        out += format_double(trace.costs[t]);
        out += ',';
        out += format_double(trace.gradient_norms[t]);
        out += ',';
        out += format_double(trace.update_norms[t]);
        out += '\n';
    }
    return out;
}

// ---- parameter files ----

namespace detail {

// theta/phi nested as [input][layer][qubit][angle].
inline Json angles_json(const ParamSet& params, int player) {
    Json inputs = Json::array();
    for (int input = 0; input < 3; ++input) {
        const auto block = params.unitary_block(player, input);
        Json layers = Json::array();
        std::size_t k = 0;
        for (int l = 0; l < params.layers; ++l) {
            Json qubits = Json::array();
            for (int q = 0; q < 3; ++q) {
                Json angles = Json::array();
                for (int a = 0; a < 3; ++a) angles.push_back(block[k++]);
                qubits.push_back(std::move(angles));
            }
            layers.push_back(std::move(qubits));
        }
        inputs.push_back(std::move(layers));
    }
    return inputs;
}

inline void read_angles(const Json& inputs, ParamSet& params, int player) {
    if (!inputs.is_array() || inputs.size() != 3)
        throw std::runtime_error("params file: expected 3 unitaries per player");
    const std::size_t n = static_cast<std::size_t>(params.shape().params_per_unitary());
    for (int input = 0; input < 3; ++input) {
        const Json& layers = inputs[static_cast<std::size_t>(input)];
        if (!layers.is_array() || layers.size() != static_cast<std::size_t>(params.layers))
            throw std::runtime_error("params file: layer count does not match declared shape");
        std::size_t k = (static_cast<std::size_t>(player) * 3 + static_cast<std::size_t>(input)) * n;
        for (const Json& qubits : layers) {
            if (!qubits.is_array() || qubits.size() != 3)
                throw std::runtime_error("params file: expected 3 qubits per layer");
            for (const Json& angles : qubits) {
                if (!angles.is_array() || angles.size() != 3)
                    throw std::runtime_error("params file: expected 3 angles per qubit");
                for (const Json& a : angles) {
                    if (!a.is_number()) throw std::runtime_error("params file: angle is not a number");
                    params.values.at(k++) = a.get<double>();
                }
            }
        }
    }
}

}  // namespace detail

inline constexpr const char* kParamsFormat = "magic-square-params-v1";
inline constexpr const char* kReportFormat = "magic-square-report-v1";

inline std::string params_document(const RunConfig& config, const TrainTrace& trace) {
    Json j;
    j["format"] = kParamsFormat;
    j["layers"] = trace.params.layers;
    j["seed"] = config.seed;
    j["learning_rate"] = config.learning_rate;
    j["iterations"] = static_cast<int>(trace.costs.size());
    j["final_cost"] = trace.final_cost;
    j["theta"] = detail::angles_json(trace.params, 0);
    j["phi"] = detail::angles_json(trace.params, 1);
    return j.dump(2) + "\n";
}

struct StoredParams {
    ParamSet params;
    double final_cost = 0.0;
    std::uint64_t seed = 0;
    double learning_rate = 0.0;
    int iterations = 0;
};

inline StoredParams parse_params_document(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw std::runtime_error(std::string("params file is not valid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("format") || j["format"] != kParamsFormat)
        throw std::runtime_error("params file: missing or unsupported format tag");
    for (const char* key : {"layers", "final_cost", "theta", "phi"})
        if (!j.contains(key)) throw std::runtime_error(std::string("params file: missing key ") + key);

    StoredParams stored;
    const int layers = j["layers"].get<int>();
    if (layers < 0) throw std::runtime_error("params file: layers must be >= 0");
    stored.params = ParamSet::zeros(layers);
    detail::read_angles(j["theta"], stored.params, 0);
    detail::read_angles(j["phi"], stored.params, 1);
    stored.final_cost = j["final_cost"].get<double>();
    stored.seed = j.value("seed", std::uint64_t{0});
    stored.learning_rate = j.value("learning_rate", 0.0);
    stored.iterations = j.value("iterations", 0);
    return stored;
}

inline StoredParams load_params_file(const std::filesystem::path& path) {
    return parse_params_document(read_text_file(path));
}

// ---- verification report ----

namespace detail {

inline Json grid3_json(const std::array<std::array<double, 3>, 3>& grid) {
    Json out = Json::array();
    for (const auto& row : grid) out.push_back(Json(row));
    return out;
}

}  // namespace detail

inline std::string report_document(const VerificationReport& report) {
    Json j;
    j["format"] = kReportFormat;
    j["shots_per_input"] = report.win_rate.shots_per_input;
    j["seed"] = report.win_rate.seed;
    j["trained_iterations"] = report.trained_iterations;
    j["final_cost"] = report.final_cost;
    j["game_value"] = report.game_value;
    j["expectation_grid"] = detail::grid3_json(report.grid.grid);
    j["alice_marginals"] = Json(report.grid.alice_marginals);
    j["bob_marginals"] = Json(report.grid.bob_marginals);
    j["commutator_norms"] = Json{{"pair_order", Json::array({"(0,1)", "(0,2)", "(1,2)"})},
                                 {"alice", Json(report.commutators.alice)},
                                 {"bob", Json(report.commutators.bob)}};
    j["parity_convention"] =
        "bits b map to values (-1)^b; Alice's row product targets +1, Bob's column product targets -1";
    j["alice_parity_plus_fraction"] = detail::grid3_json(report.parity.alice_plus_fraction);
    j["bob_parity_plus_fraction"] = detail::grid3_json(report.parity.bob_plus_fraction);
    j["intersection_agreement"] = detail::grid3_json(report.parity.intersection_agreement);
    j["win_rate_per_input"] = detail::grid3_json(report.win_rate.per_input);
    j["win_rate_overall"] = report.win_rate.overall;
    return j.dump(2) + "\n";
}

}  // namespace msq
