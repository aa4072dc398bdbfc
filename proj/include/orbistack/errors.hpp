#pragma once

#include <stdexcept>
#include <string>

namespace orbistack {

/// Base class for every error thrown by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A value violated a mathematical precondition (zero denominator,
/// non-unimodular matrix, non-coprime lens parameters, ...).
struct DomainError : Error {
    using Error::Error;
};

/// Arithmetic between elements of two distinct quadratic fields.
struct MixedFieldsError : DomainError {
    using DomainError::DomainError;
};

struct ZeroDenominatorError : DomainError {
    using DomainError::DomainError;
};

struct NotUnimodularError : DomainError {
    using DomainError::DomainError;
};

struct DimensionMismatchError : DomainError {
    using DomainError::DomainError;
};

/// Two lifted-group elements built over different contexts (different
/// matrix A, or different orientation sign).
struct ContextMismatchError : DomainError {
    using DomainError::DomainError;
};

struct NotCoprimeError : DomainError {
    using DomainError::DomainError;
};

struct NotNormalError : DomainError {
    using DomainError::DomainError;
};

/// Splitting a raw morphism needs an adjacency-connected object set when
/// the group component varies across components.
struct NotConnectedError : DomainError {
    using DomainError::DomainError;
};

/// A map that fails the groupoid functor laws (or the local-constancy
/// requirement that stands in for continuity on finite models).
struct MalformedMorphismError : DomainError {
    using DomainError::DomainError;
};

struct NotMoritaError : DomainError {
    using DomainError::DomainError;
};

struct NotHyperbolicError : DomainError {
    using DomainError::DomainError;
};

/// Structural invariant of a finite group/action/groupoid does not hold.
struct InvalidStructureError : DomainError {
    using DomainError::DomainError;
};

/// Text input (expression, matrix literal, JSON file) failed to parse.
/// `offset` is a byte offset into the input where the problem sits.
struct SyntaxError : Error {
    std::size_t offset;
    SyntaxError(const std::string& what, std::size_t offset_)
        : Error(what + " (at byte " + std::to_string(offset_) + ")"), offset(offset_) {}
};

/// Internal consistency check failed; indicates a bug, not bad input.
struct InternalError : Error {
    using Error::Error;
};

}  // namespace orbistack
