#ifndef TEC_ERROR_HPP
#define TEC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace tec {

/// Base class for all domain errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed graph or covariance input. Carries the 1-based line number
/// when the problem is tied to a specific line of the source text.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

/// Numerically singular block, non-PD matrix, weak instrument, etc.
class NumericError : public Error {
public:
    explicit NumericError(const std::string& what) : Error(what) {}
};

}  // namespace tec

#endif
