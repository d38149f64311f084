#pragma once

#include <stdexcept>
#include <string>

namespace fracmkt {

/// A caller broke an operation's precondition (duplicate offer, over-fill, ...).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Invalid parameters, profiles, or run configuration. Raised before any simulation starts.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed or unreadable input file.
class LoadError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace fracmkt
