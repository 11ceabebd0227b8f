#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nabfs {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid inputs: malformed datasets, bad configuration, out-of-range
// arguments. The CLI maps these to exit code 3.
class ValidationError : public Error {
public:
    using Error::Error;
};

class NonFiniteValueError : public ValidationError {
public:
    NonFiniteValueError(std::size_t row, std::size_t col)
        : ValidationError("non-finite value at row " + std::to_string(row) +
                          ", column " + std::to_string(col)),
          row(row), col(col) {}
    std::size_t row;
    std::size_t col;
};

class DuplicateFeatureNameError : public ValidationError {
public:
    explicit DuplicateFeatureNameError(std::string feature)
        : ValidationError("duplicate feature name '" + feature + "'"),
          name(std::move(feature)) {}
    std::string name;
};

class DegenerateResponseError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class NameCollisionError : public ValidationError {
public:
    explicit NameCollisionError(std::string candidate)
        : ValidationError("cannot find a noise column name distinct from '" +
                          candidate + "'"),
          name(std::move(candidate)) {}
    std::string name;
};

class OutOfRangePValueError : public ValidationError {
public:
    explicit OutOfRangePValueError(double value)
        : ValidationError("p-value " + std::to_string(value) +
                          " outside [0, 1]"),
          value(value) {}
    double value;
};

class DimensionMismatchError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Runtime failures of the fitting machinery. The CLI maps these to exit
// code 4.
class NonConvergenceError : public Error {
public:
    explicit NonConvergenceError(int iterations, const std::string& context = "")
        : Error("optimizer failed to reach tolerance within " +
                std::to_string(iterations) + " iterations" +
                (context.empty() ? "" : " (" + context + ")")),
          iterations(iterations) {}
    int iterations;
};

class DegenerateReplicateError : public Error {
public:
    explicit DegenerateReplicateError(std::size_t replicate)
        : Error("bootstrap replicate " + std::to_string(replicate) +
                " was single-class after all redraw attempts"),
          replicate(replicate) {}
    std::size_t replicate;
};

class TiesPresentError : public Error {
public:
    using Error::Error;
};

class InputViolatesA1Error : public Error {
public:
    using Error::Error;
};

}  // namespace nabfs
