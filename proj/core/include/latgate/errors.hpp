#pragma once

#include <stdexcept>
#include <string>

namespace latgate {

/// Raised when an adaptive integrator exhausts its evaluation budget
/// before reaching the requested tolerance.
class NonConvergence : public std::runtime_error {
public:
    explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

/// Raised by the ensemble estimator when the stage set carries no paired signal.
class NonIdentifiable : public std::runtime_error {
public:
    explicit NonIdentifiable(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace latgate
