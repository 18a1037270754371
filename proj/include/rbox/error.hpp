#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rbox {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class ArityMismatch : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class OutOfBounds : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// A requested computation exceeds its candidate budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

/// No rectangle of the requested shape exists in the search space.
class EmptySearchSpace : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace rbox
