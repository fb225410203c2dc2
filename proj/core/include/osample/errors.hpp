#pragma once

#include <stdexcept>
#include <string>

namespace osample {

/// Non-finite values, too-short series, bad parameters.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A shift, lag or window that leaves the admissible range.
class OutOfRange : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Variance estimate (or moment) is exactly zero, so no studentization is possible.
class DegenerateVariance : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Covariance matrix is singular or too badly conditioned to invert.
class RankDeficient : public std::domain_error {
public:
    RankDeficient(const std::string& what, double eigenvalue)
        : std::domain_error(what), eigenvalue_(eigenvalue) {}
    [[nodiscard]] double eigenvalue() const noexcept { return eigenvalue_; }

private:
    double eigenvalue_;
};

/// A brute-force oracle was asked to run above its size bound.
class OracleMisuse : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Malformed experiment configuration or command line options.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input data file. line() is 1-based, 0 when not tied to a line.
class DataError : public std::runtime_error {
public:
    DataError(const std::string& what, std::size_t line = 0)
        : std::runtime_error(what), line_(line) {}
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace osample
