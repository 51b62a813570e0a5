#pragma once

#include <stdexcept>
#include <string>

namespace hotgrid {

// Bad arguments, malformed structures, size limits. CLI exit code 2.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Statistically degenerate input (constant variable, empty group). CLI exit code 3.
class DegenerateInputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// File parse failure; carries file and 1-based line number. CLI exit code 2.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& file, long line, const std::string& what)
        : std::runtime_error(file + ":" + std::to_string(line) + ": " + what),
          file_(file),
          line_(line) {}

    const std::string& file() const { return file_; }
    long line() const { return line_; }

private:
    std::string file_;
    long line_;
};

}  // namespace hotgrid
