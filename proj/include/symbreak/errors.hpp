#pragma once

#include <stdexcept>
#include <string>

namespace symbreak {

/// Malformed input files or command-line arguments (CLI exit code 2).
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure: ill-conditioned solve, non-convergent series,
/// violated numeric precondition (CLI exit code 3).
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace symbreak
