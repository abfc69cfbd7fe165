#pragma once

#include <stdexcept>
#include <string>

namespace nightenh {

// Base for every error the library raises. The CLI maps subclasses to exit
// codes: ConfigError -> 1, IoError/FormatError -> 2, ArgumentError -> 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public Error {
public:
    using Error::Error;
};

// Recognized file, but not a layout we read or write (16-bit PNG, P3, ...).
class FormatError : public IoError {
public:
    using IoError::IoError;
};

// Invalid parameters or degenerate numeric input.
class ArgumentError : public Error {
public:
    using Error::Error;
};

// Malformed configuration text or key. The CLI reports it as a usage error.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace nightenh
