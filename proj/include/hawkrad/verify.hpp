#pragma once

// Self-check suites run by `hawkrad verify`. Each check reports the measured
// value next to its tolerance.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace hawkrad::verify {

enum class Suite { Identities, Typicality, Cascade, Info, All };

Suite parse_suite(const std::string& name);
const char* suite_name(Suite s);

struct CheckResult {
    std::string suite;
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct Options {
    std::uint64_t seed = 5489;
    // Replaces the default alpha sweep {0, 1, -1} in alpha-dependent checks.
    // Validated like any state parameter, so NaN raises DomainError.
    std::optional<double> alpha;
};

std::vector<CheckResult> run_suite(Suite suite, const Options& options);

nlohmann::json to_json(const std::vector<CheckResult>& results);
bool all_pass(const std::vector<CheckResult>& results);

}  // namespace hawkrad::verify
