#pragma once

#include <stdexcept>
#include <string>

namespace loopdec {

/// A named mathematical hypothesis failed (CLI exit code 1).
class hypothesis_error : public std::runtime_error {
public:
    hypothesis_error(std::string hypothesis, const std::string& detail)
        : std::runtime_error(hypothesis + ": " + detail), hypothesis_(std::move(hypothesis)) {}

    const std::string& hypothesis() const { return hypothesis_; }

private:
    std::string hypothesis_;
};

/// Malformed or out-of-contract input (CLI exit code 2).
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace loopdec
