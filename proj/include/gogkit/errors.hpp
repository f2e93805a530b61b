#pragma once

#include <stdexcept>
#include <string>

namespace gogkit {

// Malformed input or violated precondition: CLI maps this to exit code 2.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An internal cross-check failed while building an object: CLI maps this to
// exit code 1 (the construction is mathematically wrong, not the input).
struct ConstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace gogkit
