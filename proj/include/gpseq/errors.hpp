#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gpseq {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller-supplied argument violates an operation's precondition.
/// The CLI maps this family to exit code 2.
class ValidationError : public Error {
public:
    using Error::Error;
};

class SyntaxError : public ValidationError {
public:
    SyntaxError(std::size_t offset, const std::string& what)
        : ValidationError("syntax error at offset " + std::to_string(offset) + ": " + what),
          offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class UnsupportedConstant : public ValidationError {
public:
    UnsupportedConstant(std::size_t offset, const std::string& what)
        : ValidationError("unsupported constant at offset " + std::to_string(offset) + ": " + what),
          offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class DomainError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class NotPrime : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class BadResidue : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class EntryMismatch : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class CentralComponentNonzero : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Interval refinement hit the configured precision cap. For irrational
/// inputs this cannot happen mathematically, so it signals an internal bug.
class RefinementBudgetExceeded : public Error {
public:
    using Error::Error;
};

} // namespace gpseq
