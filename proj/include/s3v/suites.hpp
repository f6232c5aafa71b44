#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "s3v/branched.hpp"
#include "s3v/check.hpp"
#include "s3v/scalar.hpp"

namespace s3v {

inline constexpr const char* kToolName = "verify";
inline constexpr const char* kToolVersion = "1.0.0";

// Schema problems in a run configuration (exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::optional<std::string> model_path;
    // Empty means the default selection: formal and paths without a model,
    // every suite with one.
    std::vector<std::string> suites;
    std::int64_t cutoff = 8;
    Mode mode = Mode::Exact;
    double tolerance = 1e-9;
    std::uint64_t seed = 1;
    std::optional<std::string> report_path;
    std::optional<std::string> path_params_text;
    std::optional<std::string> dump_paths_dir;
    bool timings = false;
};

// Known suite names in execution order.
const std::vector<std::string>& suite_order();

// Validates the configuration and returns the suites to run in execution
// order. Throws ConfigError.
std::vector<std::string> resolve_suites(const RunConfig& cfg);

struct CheckEntry {
    std::string suite;
    CheckResult result;
    std::optional<double> duration;  // seconds, recorded only with timings on
    nlohmann::json extra;            // suite-specific detail, may be null
};

struct Report {
    nlohmann::json config;
    std::vector<CheckEntry> checks;

    bool all_passed() const;
    nlohmann::json to_json() const;
};

nlohmann::json config_echo(const RunConfig& cfg, const std::vector<std::string>& suites);

// Runs the selected suites. Throws ConfigError for schema problems (bad
// parameters, missing or malformed model) before any suite runs.
Report run(const RunConfig& cfg);

}  // namespace s3v
