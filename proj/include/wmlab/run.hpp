#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wmlab/verification.hpp"

namespace wmlab {

inline constexpr const char* kArtifactVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

struct RunConfig {
    std::string command = "verify-all";  // simulate | spectrum | appendix | norms | verify-all
    std::vector<int> dims{3};
    int n = 32;
    int collocation_n = 32;
    double dtau = 0.0;  // 0 selects cfl / n^2
    double cfl = 8.0;
    double tau_max = 12.0;
    std::string shape = "gaussian";
    double amplitude = 1e-3;
    std::string gauge = "adjust_T";
    bool nonlinear = true;
    bool select_T = true;
    double T0 = 1.0;
    double delta = 0.05;
    std::string region = "re>=0,abs<=15";
    std::string criteria = "1-11";
    std::string output_dir;  // empty: $WMLAB_RUNS_DIR, else ./runs
    std::uint64_t seed = 20261016;
    std::string execution = "parallel";
};

const std::vector<std::string>& run_commands();

// Field-level messages of the form "field: problem"; empty when valid.
std::vector<std::string> validate(const RunConfig& cfg);

struct ConfigError : std::invalid_argument {
    explicit ConfigError(std::vector<std::string> errs);
    std::vector<std::string> errors;
};

std::string config_to_json(const RunConfig& cfg);
// Missing keys keep their defaults; unknown keys and type mismatches throw ConfigError.
RunConfig config_from_json(const std::string& text);

struct CheckOutcome {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct RunRecord {
    RunConfig config;
    std::string version = kArtifactVersion;
    std::string started;
    std::string finished;
    std::filesystem::path directory;
    std::vector<std::string> files;
    std::vector<CheckOutcome> checks;
    std::vector<std::string> errors;  // failures of individual sub-runs
    bool ok = false;
};

// Output root: cfg.output_dir, else $WMLAB_RUNS_DIR, else ./runs.
std::filesystem::path output_root(const RunConfig& cfg);

// Validates, creates runs/<timestamp>-<command>/, dispatches and writes
// config.json, summary.json, data CSVs and run_record.json. Throws ConfigError
// for invalid configs; sub-run failures are recorded and make ok false.
RunRecord run(const RunConfig& cfg);

// Files whose bytes depend only on config and seed (everything except run_record.json).
std::vector<std::pair<std::string, std::string>> deterministic_outputs(const std::filesystem::path& dir);

}  // namespace wmlab
