#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace doeforge {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Requested design is too large (point-count guard) or too small.
class SizeError : public Error {
public:
    using Error::Error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

// A point lies outside the domain an operation requires.
class DomainError : public Error {
public:
    using Error::Error;
};

// Vector / table shapes disagree.
class ShapeError : public Error {
public:
    using Error::Error;
};

class GeneratorError : public Error {
public:
    using Error::Error;
};

class LevelError : public Error {
public:
    using Error::Error;
};

class InitError : public Error {
public:
    using Error::Error;
};

class DensityError : public Error {
public:
    using Error::Error;
};

// Invalid command-line request (bad flag, flag combination or value).
class UsageError : public Error {
public:
    using Error::Error;
};

// Text parsing failure. line() is 1-based, or 0 when the error is not tied to a line.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what, std::size_t line = 0)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace doeforge
