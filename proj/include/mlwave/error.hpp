#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mlwave {

/// Input outside the mathematical domain of an operation (bad parameters,
/// too-short series, empty grids, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Malformed input file. Carries the 1-based line number when known.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

}  // namespace mlwave
