#pragma once

#include <stdexcept>
#include <string>

namespace geocodec {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Precondition or argument violation (bad length, coordinate out of range, ...).
struct DomainError : Error {
    using Error::Error;
};

// Malformed textual input. Messages carry the character position or line
// number where the scan stopped.
struct ParseError : Error {
    using Error::Error;
};

// Lookup failed: unregistered code, unknown street, no eligible street.
struct NotFoundError : Error {
    using Error::Error;
};

// Word not present in the active wordlist. The message names the word.
struct UnknownWordError : Error {
    using Error::Error;
};

// Value outside the representable space (triple beyond the cell count,
// offset past the end of a street).
struct RangeError : Error {
    using Error::Error;
};

// Attempt to insert a code that is already registered.
struct ConflictError : Error {
    using Error::Error;
};

// Every code of the configured length is taken.
struct ExhaustedError : Error {
    using Error::Error;
};

// Filesystem failure while reading or writing an artifact.
struct IoError : Error {
    using Error::Error;
};

}  // namespace geocodec
