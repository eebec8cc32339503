#pragma once

#include <cstdint>
#include <filesystem>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "nlp/diagnostics/report.hpp"
#include "nlp/models/initial_data.hpp"
#include "nlp/models/system.hpp"
#include "nlp/solver/run.hpp"
#include "nlp/spectral/grid.hpp"

namespace nlp::app {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Modulation {
    double amplitude = 0.0;
    int axis = 0;
    double wavelength = 1.0;
    bool operator==(const Modulation&) const = default;
};

struct ModelConfig {
    models::Preset preset = models::Preset::gravitating;
    int species = 1;
    std::optional<std::vector<double>> coupling;
    std::optional<Modulation> modulation;
    bool operator==(const ModelConfig&) const = default;
};

struct GridConfig {
    int d = 2;
    int n = 64;
    double period = 32.0 * std::numbers::pi;
    bool operator==(const GridConfig&) const = default;
};

struct DiagnosticsConfig {
    diagnostics::NormSpec norms;
    // Norm rows every this many solver snapshots; NLPF1 files likewise
    // (0 writes only the first and last state).
    int norms_every = 1;
    int snapshots_every = 0;
    bool operator==(const DiagnosticsConfig&) const = default;
};

struct OracleConfig {
    int cutoff = 8;         // spectral solver band
    int oracle_cutoff = 8;  // picard_direct lattice
    int steps = 500;
    int checkpoints = 10;
    bool operator==(const OracleConfig&) const = default;
};

struct RunConfig {
    ModelConfig model;
    GridConfig grid;
    models::InitialDataSpec initial;
    solver::SolverConfig solver;
    DiagnosticsConfig diagnostics;
    std::string output_dir = "out";
    std::uint64_t seed = 1;
    std::optional<OracleConfig> oracle;
    bool operator==(const RunConfig&) const = default;
};

// Strict: unknown keys, wrong types and invalid values throw ConfigError.
// "period" also accepts strings such as "32pi".
RunConfig config_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const RunConfig& cfg);
RunConfig load_config(const std::filesystem::path& path);

// Builds every object the config refers to; throws ConfigError on the first failure.
void validate(const RunConfig& cfg);

models::SystemSpec build_system(const RunConfig& cfg);
spectral::TorusGrid build_grid(const RunConfig& cfg);

}  // namespace nlp::app
