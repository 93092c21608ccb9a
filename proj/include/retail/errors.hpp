#pragma once

#include <stdexcept>
#include <string>

namespace retail {

/// Base class for every error raised by the simulator library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input file does not follow the documented tabular layout.
class SchemaError : public Error {
public:
    using Error::Error;
};

/// A value violates a domain invariant (duplicate id, non-positive price, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class CalibrationError : public Error {
public:
    using Error::Error;
};

/// Unknown SKU, supplier or other identifier.
class ReferenceError : public Error {
public:
    using Error::Error;
};

class FundsError : public Error {
public:
    using Error::Error;
};

/// Operation invoked in the wrong episode phase.
class PhaseError : public Error {
public:
    using Error::Error;
};

/// Bad call arguments (wrong shape, inverted ranges, empty inputs).
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// Internal bookkeeping went out of sync. Always an engine bug.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

}  // namespace retail
