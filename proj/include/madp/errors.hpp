#pragma once

#include <stdexcept>
#include <string>

namespace madp {

/// A state coordinate or index outside its declared bounds.
class BoundsError : public std::out_of_range {
public:
    explicit BoundsError(const std::string& what) : std::out_of_range(what) {}
};

/// Caller passed arguments that violate an operation's contract.
class UsageError : public std::invalid_argument {
public:
    explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

/// Operation requires a kernel capability (exact enumeration or sampling)
/// the model does not provide, or a value-table shape that does not match.
class UnsupportedModeError : public std::logic_error {
public:
    explicit UnsupportedModeError(const std::string& what) : std::logic_error(what) {}
};

/// The model itself is malformed (empty action set, non-monotone terminal
/// slice, unnormalized kernel, ...).
class ModelError : public std::runtime_error {
public:
    explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

/// Inputs that make the requested quantity undefined (zero-mass density,
/// optimal value equal to the percent baseline, ...).
class DegenerateInputError : public std::runtime_error {
public:
    explicit DegenerateInputError(const std::string& what) : std::runtime_error(what) {}
};

/// A run was refused because it would exceed the configured resource
/// guardrails; carries a human-readable size estimate.
class ResourceRefusalError : public std::runtime_error {
public:
    explicit ResourceRefusalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace madp
