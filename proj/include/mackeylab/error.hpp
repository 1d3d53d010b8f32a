#pragma once
#include <stdexcept>
#include <string>

namespace mackeylab {

// Domain errors (exit code 1 in the CLI): well-formed input, impossible request.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input (exit code 2 in the CLI): unparsable or schema-violating data.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mackeylab
