#pragma once

// Command-line front end. Exit codes: 0 ok, 1 usage, 2 invalid physics,
// 3 numerical or verification failure.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "hawkrad/evaporation.hpp"
#include "hawkrad/spectrum_grid.hpp"

namespace hawkrad::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kPhysics = 2, kFailure = 3 };

struct RunConfig {
    std::string command;  // spectrum | cascade | verify | typicality

    // Hole parameters stay raw so that validation happens inside the run and
    // maps to exit code 2.
    std::string family = "schwarzschild";
    double mass = 1.0;
    double charge = 0.0;
    double spin = 0.0;
    double alpha = 0.0;

    GridSpec grid;
    std::string normalization = "raw";
    bool report = false;

    CascadePolicy policy;
    std::size_t samples = 1;
    std::uint64_t seed = 5489;
    std::size_t workers = 1;

    std::string suite = "all";
    std::optional<double> verify_alpha;

    std::size_t levels = 2;
    std::uint64_t degeneracy = 2;
    std::uint64_t env_dim = 4096;
    std::size_t lab_seeds = 100;

    std::string output;  // empty: primary artifact to stdout, no side files
    std::string format;  // empty: command default
};

// Echo of everything that determines the output bytes. Worker count is left
// out because results do not depend on it.
nlohmann::json config_json(const RunConfig& cfg);

// Runs one command and maps exceptions to exit codes. Messages go to `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Parses argv (flags, optional --config file) and runs.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hawkrad::cli
