#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace efinv {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class FactorizationFailure : public Error {
public:
    using Error::Error;
};

class ShapeMismatch : public Error {
public:
    using Error::Error;
};

class NotSquare : public Error {
public:
    using Error::Error;
};

class NonFiniteEntry : public Error {
public:
    using Error::Error;
};

class BadParams : public Error {
public:
    using Error::Error;
};

/// Two subspaces do not add up to the ambient space as a direct sum.
class NotComplementary : public Error {
public:
    using Error::Error;
};

class IndexTooLarge : public Error {
public:
    IndexTooLarge(const std::string& what, int index) : Error(what), index_(index) {}
    int index() const noexcept { return index_; }

private:
    int index_;
};

/// The requested inverse does not exist. `violated()` names the failing conditions.
class NotExistent : public Error {
public:
    explicit NotExistent(const std::string& what, std::vector<std::string> violated = {})
        : Error(what), violated_(std::move(violated)) {}
    const std::vector<std::string>& violated() const noexcept { return violated_; }

private:
    std::vector<std::string> violated_;
};

class NotOuter : public Error {
public:
    using Error::Error;
};

class NotInner : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace efinv
