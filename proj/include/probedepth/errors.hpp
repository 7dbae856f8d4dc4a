/*!
  \file errors.hpp
  \brief Exception types shared by all probedepth modules
*/

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace probedepth
{

/*! \brief Base class of every error raised by the library */
class error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/*! \brief Malformed textual input, with a 1-based source position */
class parse_error : public error
{
public:
  parse_error( const std::string& msg, std::size_t line, std::size_t column )
      : error( "line " + std::to_string( line ) + ", column " + std::to_string( column ) + ": " + msg ),
        line_( line ), column_( column )
  {
  }

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

/// A reference to a variable that is not part of the universe.
class unknown_variable : public error
{
public:
  using error::error;
};

/// Input exceeds a configured size cap (truth-table support, search universe).
class capacity_exceeded : public error
{
public:
  using error::error;
};

/// The input is well-formed but outside the class an operation accepts.
class domain_error : public error
{
public:
  using error::error;
};

/// Exact search ran out of its explored-state budget.
class budget_exhausted : public error
{
public:
  using error::error;
};

} // namespace probedepth
