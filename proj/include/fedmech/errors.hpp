#pragma once

#include <stdexcept>
#include <string>

namespace fedmech {

// Bad user-supplied configuration (scenario files, manifests, invalid model
// parameters, failed Assumption-2 sampling checks).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A bracketed root-finder could not locate a root (no sign change, cap hit).
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Assumption 3 violated: server accuracy below a device's standalone accuracy.
struct AssumptionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Shaping undefined: marginal reward exceeds marginal cost (c - r + eps <= 0).
struct RewardExceedsCostError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Settlement produced an accuracy reward beyond the global model accuracy.
struct FeasibilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace fedmech
