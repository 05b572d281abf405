#pragma once

#include <stdexcept>
#include <string>

namespace cantor {

// Invalid parameter combinations (budget violated, division by zero, ...).
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Evaluation requested exactly at a pole; carries the pole's identity.
struct PoleError : std::runtime_error {
    explicit PoleError(const std::string& what) : std::runtime_error(what) {}
};

// Sampling too coarse to resolve a winding number or a boundary check.
// Callers double the sample count and retry.
struct ResolutionError : std::runtime_error {
    explicit ResolutionError(const std::string& what) : std::runtime_error(what) {}
};

// Newton refinement failed to converge from a seed.
struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// Coefficient expansion would overflow; caller should use the log-space path.
struct ScaleError : std::runtime_error {
    explicit ScaleError(const std::string& what) : std::runtime_error(what) {}
};

// A symbolic prefix could not be bracketed on the requested ray.
struct NotBracketed : std::runtime_error {
    explicit NotBracketed(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cantor
