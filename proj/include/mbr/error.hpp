#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mbr {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed formula, rule, or document text. `position()` is a byte offset
/// into the input when one is known.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t position)
        : Error(message + " (at offset " + std::to_string(position) + ")"), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Unknown agent/proposition id, or two values built over different signatures.
class SignatureError : public Error {
public:
    using Error::Error;
};

/// Input outside an operation's definedness domain, e.g. a non-literal formula
/// handed to an event-model operator.
class DomainError : public Error {
public:
    using Error::Error;
};

/// The valuation-update fixpoint had no solution or more than one.
class StarUpdateError : public Error {
public:
    enum class Kind { NoSolution, MultipleSolutions };

    StarUpdateError(Kind kind, const std::string& message) : Error(message), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

}  // namespace mbr
