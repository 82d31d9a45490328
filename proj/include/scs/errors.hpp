#ifndef SCS_ERRORS_HPP
#define SCS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace scs {

/// Root of the library's error hierarchy.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Rejected input: bad dimensions, out-of-range parameters, broken invariants.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Numerical breakdown: singular systems beyond fallback, failed iterations.
class NumericError : public Error {
public:
    using Error::Error;
};

/// Operation invoked in the wrong phase of a stateful protocol.
class StateError : public Error {
public:
    using Error::Error;
};

/// File-system level failure (open, read, write).
class IoError : public Error {
public:
    using Error::Error;
};

/// Malformed file contents. Messages carry the byte offset of the defect.
class FormatError : public IoError {
public:
    using IoError::IoError;
};

} // namespace scs

#endif
