#pragma once

#include <stdexcept>
#include <string>

namespace cribq {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NormalizationError : public Error { using Error::Error; };
class SeparationError : public Error { using Error::Error; };
class GridError : public Error { using Error::Error; };
class GridMismatchError : public Error { using Error::Error; };
class DomainError : public Error { using Error::Error; };
class KindError : public Error { using Error::Error; };
class RangeError : public Error { using Error::Error; };
class SingularityError : public Error { using Error::Error; };
class ZeroEchoError : public Error { using Error::Error; };

// Numerical-resolution failures. The CLI maps these to exit code 3.
class ResolutionError : public Error { using Error::Error; };
class WindowError : public ResolutionError { using ResolutionError::ResolutionError; };

/// Configuration parse or validation failure; `line()` is 0 when the
/// problem is not tied to a particular line of the input.
class ConfigError : public Error {
public:
    ConfigError(const std::string& message, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

}  // namespace cribq
