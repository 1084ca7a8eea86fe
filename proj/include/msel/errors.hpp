#pragma once

#include <stdexcept>
#include <string>

namespace msel {

// Caller passed something out of contract (bad sizes, ranges, options).
// The CLI maps this to exit code 2.
class InvalidArgument : public std::invalid_argument {
public:
    explicit InvalidArgument(const std::string& what) : std::invalid_argument(what) {}
};

// The inputs were well-formed but the computation cannot proceed
// (singular system, interpolating smoother, non-PSD covariance, ...).
// The CLI maps this to exit code 1.
class ComputationError : public std::runtime_error {
public:
    explicit ComputationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace msel
