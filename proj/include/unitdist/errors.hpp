#pragma once

#include <stdexcept>
#include <string>

namespace unitdist {

// Thrown when an iterative numeric routine (quadrature, bracketing) stops
// before reaching the requested accuracy. Carries the error estimate it did
// achieve so callers can decide whether the result is still usable.
class numeric_error : public std::runtime_error {
public:
    numeric_error(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}

    double achieved_error() const noexcept { return achieved_; }

private:
    double achieved_;
};

// Thrown when an estimating equation has no admissible (positive) solution
// on the given data, e.g. a degenerate small sample.
class estimation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace unitdist
