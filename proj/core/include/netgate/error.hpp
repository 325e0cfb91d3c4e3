#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace netgate {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed text input. Carries the 1-based line number when known.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// An estimator cannot be evaluated on the given data (empty arm, no exposed units, ...).
class EstimationError : public Error {
public:
    using Error::Error;
};

}  // namespace netgate
