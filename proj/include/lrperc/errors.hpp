#pragma once

#include <stdexcept>
#include <string>

namespace lrperc {

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateScale : DomainError {
    using DomainError::DomainError;
};

struct SelfLoop : DomainError {
    using DomainError::DomainError;
};

struct TooLarge : DomainError {
    using DomainError::DomainError;
};

struct InvalidTiling : DomainError {
    using DomainError::DomainError;
};

struct OverlapError : DomainError {
    using DomainError::DomainError;
};

struct GapTooSmall : DomainError {
    using DomainError::DomainError;
};

struct LengthMismatch : DomainError {
    using DomainError::DomainError;
};

struct NoConditioningEvents : DomainError {
    using DomainError::DomainError;
};

struct ParseError : DomainError {
    using DomainError::DomainError;
};

} // namespace lrperc
