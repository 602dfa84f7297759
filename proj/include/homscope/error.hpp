#pragma once

#include <stdexcept>
#include <string>

namespace homscope {

/// Base of all library errors. Each subclass maps to a distinct CLI exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text or files.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A structural invariant (simple graph, unique patterns, label ranges) is violated.
class InvariantError : public Error {
public:
    using Error::Error;
};

/// Argument outside an operation's domain.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A configured work or size cap was exceeded. Counts are never approximated.
class ResourceError : public Error {
public:
    using Error::Error;
};

/// Internal consistency check failed (e.g. an exact division left a remainder).
class InternalError : public Error {
public:
    using Error::Error;
};

} // namespace homscope
