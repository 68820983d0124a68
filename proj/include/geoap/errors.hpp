#pragma once

#include <stdexcept>
#include <string>

namespace geoap {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Precondition violated by the caller (bad index, bad threshold, ...).
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// Malformed or inconsistent input files.
class DataError : public Error {
public:
    using Error::Error;
};

/// Message passing produced non-finite values or ended without exemplars.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Preference search could not land on the requested cluster count.
class CalibrationError : public Error {
public:
    CalibrationError(const std::string& what, std::size_t closest_k)
        : Error(what), closest_k_(closest_k) {}
    std::size_t closest_k() const noexcept { return closest_k_; }

private:
    std::size_t closest_k_;
};

}  // namespace geoap
