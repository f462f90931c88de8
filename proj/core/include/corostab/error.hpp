#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace corostab {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-finite or malformed numeric input.
class InvalidInputError : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain (non-SPD tensor, non-positive stretch, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Invalid or incomplete material / run configuration. The message names the offending field.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Operation invoked with an inconsistent combination of arguments.
class UsageError : public Error {
public:
    using Error::Error;
};

/// A finite-difference stencil left the range in which the closure is solvable.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Root finding failed. Carries the driving stretch and the residual scan that was inspected.
class SolverError : public Error {
public:
    struct ScanPoint {
        double lateral;
        double residual;
    };

    SolverError(const std::string& what, double lambda1, std::vector<ScanPoint> scan = {})
        : Error(what), lambda1_(lambda1), scan_(std::move(scan)) {}

    [[nodiscard]] double lambda1() const noexcept { return lambda1_; }
    [[nodiscard]] const std::vector<ScanPoint>& scan() const noexcept { return scan_; }

private:
    double lambda1_;
    std::vector<ScanPoint> scan_;
};

}  // namespace corostab
