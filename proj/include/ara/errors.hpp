#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ara {

/// Raised by the PCD reader; carries the 1-based line that failed.
class ParseError : public std::runtime_error
{
public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
  {
  }

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// Input outside the domain an operation is defined on (empty cloud, too few points, ...).
class DomainError : public std::domain_error
{
public:
  using std::domain_error::domain_error;
};

class DegenerateAnchorError : public DomainError
{
public:
  using DomainError::DomainError;
};

class InfeasibleTrajectoryError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

}  // namespace ara
