#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace nullcover
{

/// Raised when a configured size or time cap is hit. `partial_count` carries
/// whatever progress counter the failing routine tracks (primes found, nodes
/// explored, ...).
class BudgetExceeded : public std::runtime_error
{
public:
  BudgetExceeded( const std::string& what, std::uint64_t partial_count = 0 )
      : std::runtime_error( what ), partial_count_( partial_count )
  {
  }

  std::uint64_t partial_count() const noexcept { return partial_count_; }

private:
  std::uint64_t partial_count_;
};

class InfeasibleError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Text-format error. `line` is 1-based; 0 means "not tied to a line".
class ParseError : public std::runtime_error
{
public:
  ParseError( std::size_t line, const std::string& what )
      : std::runtime_error( line ? "line " + std::to_string( line ) + ": " + what : what ), line_( line )
  {
  }

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

} // namespace nullcover
