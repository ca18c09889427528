#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dualprov {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed text: formulas, polynomial expressions, workspace files.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " (at offset " + std::to_string(position) + ")"), position_(position) {}
    explicit ParseError(const std::string& what) : Error(what) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_ = 0;
};

/// Well-formed input that violates a precondition (free variables,
/// incompatible structures, annihilation failures, ...).
class SemanticError : public Error {
public:
    using Error::Error;
};

/// An enumeration would exceed its configured cap.
class CapExceeded : public Error {
public:
    CapExceeded(const std::string& what, std::size_t reached)
        : Error(what), reached_(reached) {}

    std::size_t reached() const { return reached_; }

private:
    std::size_t reached_;
};

}  // namespace dualprov
