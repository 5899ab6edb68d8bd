#pragma once

#include <stdexcept>
#include <string>

namespace cbn {

// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed graph input (bad edge, bad file line).
class GraphError : public Error {
public:
    using Error::Error;
};

// An operation was called outside its domain (not strongly connected,
// p not a divisor of the loop number, non-periodic state, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

// A configured size cap (cycle count, oracle n, necklace length) was hit.
class CapExceeded : public Error {
public:
    using Error::Error;
};

} // namespace cbn
