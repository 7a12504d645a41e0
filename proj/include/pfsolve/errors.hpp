#pragma once

#include <stdexcept>
#include <string>

namespace pfsolve {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Mismatched label lengths, qudit dimensions or matrix sizes.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A size cap (dense dimension, enumeration size, spectrum size) was exceeded.
class ResourceError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

/// Unknown term or vertex identifier.
class KeyError : public Error {
public:
    using Error::Error;
};

/// An operation was called outside its domain (e.g. chordal recursion on a
/// non-chordal graph).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// The input is well formed but outside what the construction supports.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

}  // namespace pfsolve
