#pragma once

#include <stdexcept>
#include <string>

namespace argo {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function (logit of 0, log of a negative).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed, inconsistent or insufficient input data.
class DataError : public Error {
public:
    using Error::Error;
};

/// Invalid configuration or model specification.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// An iterative numerical routine failed to reach its tolerance.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

}  // namespace argo
