#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace lepage {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Multi-index or chart dimensions disagree.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A total derivative would produce a jet coordinate above the configured cap.
class OrderCapError : public Error {
public:
    using Error::Error;
};

/// An operation was applied outside its domain (wrong bidegree, p = 0, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

class SubstitutionError : public Error {
public:
    using Error::Error;
};

class UnsupportedInputError : public Error {
public:
    using Error::Error;
};

class ChartMismatchError : public Error {
public:
    using Error::Error;
};

/// Syntax or semantic error in DSL input, carrying a 1-based source position.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line, int column,
               std::vector<std::string> expected = {})
        : Error(format(msg, line, column, expected)),
          line_(line),
          column_(column),
          expected_(std::move(expected)) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    static std::string format(const std::string& msg, int line, int column,
                              const std::vector<std::string>& expected) {
        std::string out = std::to_string(line) + ":" + std::to_string(column) + ": " + msg;
        if (!expected.empty()) {
            out += " (expected ";
            for (std::size_t k = 0; k < expected.size(); ++k) {
                if (k) out += ", ";
                out += expected[k];
            }
            out += ")";
        }
        return out;
    }

    int line_;
    int column_;
    std::vector<std::string> expected_;
};

}  // namespace lepage
