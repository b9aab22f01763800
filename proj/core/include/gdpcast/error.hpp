#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gdpcast {

// Precondition violations use std::invalid_argument. The types below mark
// failures callers commonly want to tell apart.

/// Malformed or inconsistent input data. `line()` is 1-based, 0 when unknown.
class DataError : public std::runtime_error {
public:
    DataError(const std::string& what, std::size_t line = 0)
        : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
          line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A linear system (least squares normal equations) has no unique solution.
class SingularMatrixError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// SARIMA coefficients outside the stationary / invertible region.
class InfeasibleParameters : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// LSTM training produced a non-finite loss.
class TrainingDiverged : public std::runtime_error {
public:
    TrainingDiverged(const std::string& what, int epoch)
        : std::runtime_error(what), epoch_(epoch) {}

    [[nodiscard]] int epoch() const noexcept { return epoch_; }

private:
    int epoch_;
};

}  // namespace gdpcast
