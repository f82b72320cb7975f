#pragma once

#include <stdexcept>
#include <string>

namespace rps {

// Input failed a documented validity range. `variable` carries the
// parameter name (e.g. "PROPFQ") so callers can report which limit tripped.
class range_error : public std::runtime_error {
public:
    range_error(std::string variable, const std::string& what)
        : std::runtime_error(what), variable_(std::move(variable)) {}
    const std::string& variable() const noexcept { return variable_; }

private:
    std::string variable_;
};

// Mathematically invalid input (non-positive distance, K = 0 where a
// dominant path is required, and so on).
class domain_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed text input; `line` is 1-based, 0 when not line-addressable.
class parse_error : public std::runtime_error {
public:
    parse_error(std::size_t line, const std::string& what)
        : std::runtime_error(what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_ = 0;
};

// Filesystem-level failure (missing file, unwritable output).
class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace rps
