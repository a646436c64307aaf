#pragma once

#include <stdexcept>
#include <string>

namespace bermuda {

// Numerical failure (root search exhaustion, diverging training, ...).
// The CLI maps this to its own exit code, distinct from usage errors.
struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

// A required upstream artifact (dataset, model file) is missing.
struct missing_artifact_error : std::runtime_error {
    explicit missing_artifact_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bermuda
