#pragma once

#include <stdexcept>
#include <string>

namespace dtilt {

/// Parameter outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Distortion level outside the interior regime 0 < D < min(pi0, pi1).
class RegimeError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Request would exceed a configured size or work budget.
class ResourceError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Iterative solver hit its iteration cap.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Cumulant order outside the supported range.
class OrderError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace dtilt
