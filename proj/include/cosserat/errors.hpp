#pragma once

#include <stdexcept>
#include <string>

namespace cosserat {

// Common base for all domain-level failures (as opposed to I/O or usage
// problems), so callers can map them to one exit path.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotOrthogonal : DomainError {
    using DomainError::DomainError;
};

struct NonSkewSlice : DomainError {
    using DomainError::DomainError;
};

struct SingularStretch : DomainError {
    using DomainError::DomainError;
};

struct GridTooSmall : DomainError {
    using DomainError::DomainError;
};

struct GridMismatch : DomainError {
    using DomainError::DomainError;
};

struct NonFiniteSample : DomainError {
    using DomainError::DomainError;
};

struct NonFiniteA : DomainError {
    using DomainError::DomainError;
};

struct ZeroField : DomainError {
    using DomainError::DomainError;
};

struct LineSearchStalled : DomainError {
    using DomainError::DomainError;
};

struct UnknownCase : DomainError {
    using DomainError::DomainError;
};

} // namespace cosserat
