#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dsm2d {

// Error taxonomy shared by the whole library. The CLI maps these onto
// process exit codes: config/usage -> 2, numerical/degenerate -> 3, I/O -> 4.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument value (non-positive length, NaN, out-of-range threshold).
class DomainError : public Error {
public:
    using Error::Error;
};

/// API misuse: wrong data mode, mismatched grids, incompatible flags.
class UsageError : public Error {
public:
    using Error::Error;
};

/// Input data is degenerate (identically zero map or data vector).
class DegenerateDataError : public Error {
public:
    using Error::Error;
};

/// Numerical failure (singular dense system, non-finite intermediate).
class NumericalError : public Error {
public:
    using Error::Error;
};

/// Configuration document failed validation.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Malformed input file; carries the 1-based line number when known.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line = 0)
        : Error(line ? msg + " (line " + std::to_string(line) + ")" : msg), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Filesystem failure: unreadable input, unwritable output directory.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace dsm2d
