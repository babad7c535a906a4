#pragma once

#include <stdexcept>
#include <string>

namespace confspace {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed graph file.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A graph or argument violates a structural precondition.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// The graph is too coarse for the requested particle count.
class InsufficientSubdivision : public Error {
public:
    using Error::Error;
};

/// Fixed-width arithmetic would have wrapped.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// A job would exceed the configured cell budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

} // namespace confspace
