// Exception types shared by every gyrosim module.
#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace gyrosim {

/// An input outside the mathematical domain of an operation (non-positive
/// mass, T <= 0, a window longer than the trajectory, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Quality factor requested for a system with zero damping.
class UndampedError : public DomainError {
public:
    UndampedError() : DomainError("undamped: quality factor is undefined for zero damping") {}
};

/// Undamped response evaluated exactly at the natural frequency.
class ResonanceError : public DomainError {
public:
    ResonanceError()
        : DomainError("resonance singularity: undamped response at drive_freq == natural_freq") {}
};

/// A parameter, config entry or sweep specification that violates its
/// invariants. `field()` names the offending key.
class ValidationError : public std::invalid_argument {
public:
    ValidationError(std::string field, const std::string &what)
        : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

    const std::string &field() const noexcept { return field_; }

private:
    std::string field_;
};

/// File-system failure; the message carries the path.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace gyrosim
