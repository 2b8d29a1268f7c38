#pragma once

#include <stdexcept>
#include <string>

namespace qhs {

// Invalid run configuration or CLI input.  CLI exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& m) : std::runtime_error(m) {}
};

// Operands live over different coefficient rings or truncations.
struct DescriptorError : std::runtime_error {
    explicit DescriptorError(const std::string& m) : std::runtime_error(m) {}
};

// Precondition violation on a mathematical operation.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& m) : std::runtime_error(m) {}
};

// A structural identity that must hold failed at runtime.  CLI exit code 3.
struct ConsistencyError : std::runtime_error {
    explicit ConsistencyError(const std::string& m) : std::runtime_error(m) {}
};

// Torus parameters hit a coincidence (zero weight, pole collision).  Callers
// may redraw the parameters; the CLI exits 4 once retries are exhausted.
struct DegenerateParameterError : std::runtime_error {
    explicit DegenerateParameterError(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace qhs
