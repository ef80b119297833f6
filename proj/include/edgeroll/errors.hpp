#pragma once

#include <stdexcept>
#include <string>

namespace edgeroll {

/// Precondition or argument violation (bad geometry, bad config value, ...).
class InvalidInputError : public std::invalid_argument {
public:
    explicit InvalidInputError(const std::string& what) : std::invalid_argument(what) {}
};

/// File system failure, reported with the path for context.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// The back-and-forth optimizer exhausted its line-count budget without a
/// feasible solution. Carries the diagnostics of the best attempt.
class InfeasibleError : public std::runtime_error {
public:
    InfeasibleError(const std::string& what, int last_k, double best_residual)
        : std::runtime_error(what), last_k_tried(last_k), best_residual_m(best_residual) {}

    int last_k_tried;
    double best_residual_m;
};

} // namespace edgeroll
