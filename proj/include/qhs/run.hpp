#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

namespace qhs {

// One reproducible pipeline invocation.  The configuration document fixes the
// space, bundle, truncations and torus parameters; outputs are deterministic
// functions of it.
struct RunResult {
    int exit_code = 0;
    nlohmann::json doc;
    std::string csv;
};

// Execute the command named in the configuration.  Throws ConfigError for a
// malformed configuration; ConsistencyError and DegenerateParameterError
// propagate with their CLI exit codes handled by the caller.
RunResult run_config(const nlohmann::json& config);

// Render the result document as CSV (same values as the JSON rows).
std::string to_csv(const nlohmann::json& doc);

}  // namespace qhs
