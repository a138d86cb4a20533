#pragma once

#include <stdexcept>
#include <string>

namespace fdpn {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration: bad parameter values, unknown keys, inconsistent scenario.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Inputs that violate an operation's preconditions (length mismatch, bad bit count, ...).
class InputError : public Error {
public:
    using Error::Error;
};

/// A metric that has no defined value for the given data (e.g. zero reference power).
class MetricError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace fdpn
