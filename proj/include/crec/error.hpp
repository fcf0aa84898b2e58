#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace crec {

// Precondition violations on library inputs use std::invalid_argument.
// The two types below carry information the CLI maps to distinct exit codes.

/// A representation evaluated to something that cannot be a sequence term:
/// a non-positive modulus or an inexact division by |alpha_d|.
class RepresentationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text (b-files, CSV). Carries a 1-based line number.
class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

}  // namespace crec
