/*!
  \file parse.hpp
  \brief Reader and printer for the expression file format

  \verbatim
  file      := header? stmt (separator stmt)*
  header    := "vars:" ident+ newline
  separator := newline | ";"
  expr      := or
  or        := and ("|" and)*
  and       := not ("&" not)*
  not       := "!" not | atom
  atom      := ident | "0" | "1" | "(" expr ")"
  \endverbatim

  `#` starts a comment running to the end of the line. Newlines inside
  parentheses are whitespace. Without a header the universe is the set of
  occurring variables in first-occurrence order.
*/

#pragma once

#include <cctype>
#include <cstddef>
#include <istream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "expression.hpp"

namespace probedepth
{

namespace detail
{

class expression_parser
{
public:
  explicit expression_parser( std::string_view text ) : text_( text ) {}

  expression_set parse()
  {
    skip_blank( true );
    if ( starts_with_header() )
    {
      declared_ = true;
      pos_ += 5;
      col_ += 5;
      skip_blank( false );
      while ( pos_ < text_.size() && text_[pos_] != '\n' )
      {
        auto const [line, col] = std::pair{ line_, col_ };
        auto name = read_identifier();
        if ( !name )
          fail( "expected variable name in header", line, col );
        if ( universe_.find( *name ) )
          fail( "duplicate variable '" + *name + "' in header", line, col );
        universe_.add( *name );
        skip_blank( false );
      }
      if ( universe_.empty() )
        fail( "header declares no variables", line_, col_ );
    }

    std::vector<expression> members;
    while ( true )
    {
      skip_separators();
      if ( pos_ >= text_.size() )
        break;
      members.push_back( parse_or( 0 ) );
      skip_blank( false );
      if ( pos_ < text_.size() && text_[pos_] != '\n' && text_[pos_] != ';' )
        fail( std::string( "unexpected '" ) + text_[pos_] + "'", line_, col_ );
    }
    if ( members.empty() )
      fail( "empty input: no expression", line_, col_ );
    return expression_set( std::move( universe_ ), std::move( members ) );
  }

private:
  [[noreturn]] void fail( std::string const& msg, std::size_t line, std::size_t col ) const
  {
    throw parse_error( msg, line, col );
  }

  void advance()
  {
    if ( text_[pos_] == '\n' )
    {
      ++line_;
      col_ = 1;
    }
    else
      ++col_;
    ++pos_;
  }

  /* skips spaces and comments; newlines only if `newlines` */
  void skip_blank( bool newlines )
  {
    while ( pos_ < text_.size() )
    {
      char c = text_[pos_];
      if ( c == '#' )
      {
        while ( pos_ < text_.size() && text_[pos_] != '\n' )
          advance();
      }
      else if ( c == ' ' || c == '\t' || c == '\r' || ( newlines && c == '\n' ) )
        advance();
      else
        break;
    }
  }

  void skip_separators()
  {
    while ( true )
    {
      skip_blank( true );
      if ( pos_ < text_.size() && text_[pos_] == ';' )
        advance();
      else
        break;
    }
  }

  bool starts_with_header() const { return text_.substr( pos_, 5 ) == "vars:"; }

  std::optional<std::string> read_identifier()
  {
    auto ident_char = []( char c, bool first ) {
      return std::isalpha( static_cast<unsigned char>( c ) ) || c == '_' || ( !first && std::isdigit( static_cast<unsigned char>( c ) ) );
    };
    if ( pos_ >= text_.size() || !ident_char( text_[pos_], true ) )
      return std::nullopt;
    std::size_t const start = pos_;
    while ( pos_ < text_.size() && ident_char( text_[pos_], false ) )
      advance();
    return std::string( text_.substr( start, pos_ - start ) );
  }

  char peek( int depth )
  {
    skip_blank( depth > 0 );
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  expression parse_or( int depth )
  {
    std::vector<expression> terms{ parse_and( depth ) };
    while ( peek( depth ) == '|' )
    {
      advance();
      terms.push_back( parse_and( depth ) );
    }
    return terms.size() == 1 ? terms.front() : expression::disjunction( std::move( terms ) );
  }

  expression parse_and( int depth )
  {
    std::vector<expression> factors{ parse_not( depth ) };
    while ( peek( depth ) == '&' )
    {
      advance();
      factors.push_back( parse_not( depth ) );
    }
    return factors.size() == 1 ? factors.front() : expression::conjunction( std::move( factors ) );
  }

  expression parse_not( int depth )
  {
    if ( peek( depth ) == '!' )
    {
      advance();
      return expression::negation( parse_not( depth ) );
    }
    return parse_atom( depth );
  }

  expression parse_atom( int depth )
  {
    char const c = peek( depth );
    auto const line = line_, col = col_;
    if ( c == '(' )
    {
      advance();
      auto e = parse_or( depth + 1 );
      if ( peek( depth + 1 ) != ')' )
        fail( "expected ')'", line_, col_ );
      advance();
      return e;
    }
    if ( c == '0' || c == '1' )
    {
      advance();
      if ( pos_ < text_.size() && std::isalnum( static_cast<unsigned char>( text_[pos_] ) ) )
        fail( "invalid token after constant", line_, col_ );
      return expression::constant( c == '1' );
    }
    if ( auto name = read_identifier() )
    {
      if ( declared_ )
      {
        auto idx = universe_.find( *name );
        if ( !idx )
          fail( "variable '" + *name + "' not declared in header", line, col );
        return expression::variable( *idx );
      }
      return expression::variable( universe_.intern( *name ) );
    }
    if ( c == '\0' || c == '\n' || c == ';' )
      fail( "unexpected end of expression", line, col );
    fail( std::string( "unexpected '" ) + c + "'", line, col );
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  bool declared_ = false;
  variable_universe universe_;
};

} // namespace detail

inline expression_set parse_expressions( std::string_view text )
{
  return detail::expression_parser( text ).parse();
}

inline expression_set parse_expressions( std::istream& in )
{
  std::string text( ( std::istreambuf_iterator<char>( in ) ), std::istreambuf_iterator<char>() );
  return parse_expressions( text );
}

/// Single expression over an existing universe (names must be declared).
inline expression parse_expression( std::string_view text, variable_universe const& universe )
{
  std::string full = "vars:";
  for ( auto const& n : universe.names() )
    full += " " + n;
  if ( universe.empty() )
    full.clear();
  else
    full += "\n";
  full += text;
  auto s = parse_expressions( full );
  if ( s.size() != 1 )
    throw domain_error( "expected exactly one expression" );
  return s[0];
}

/// Fully parenthesized rendering in the file grammar.
inline std::string to_string( expression const& e, variable_universe const& universe )
{
  switch ( e.kind() )
  {
  case node_kind::constant:
    return e.value() ? "1" : "0";
  case node_kind::variable:
    return universe.name( e.var() );
  case node_kind::negation:
    return "!" + to_string( e.children().front(), universe );
  default:
  {
    std::string const op = e.kind() == node_kind::conjunction ? " & " : " | ";
    std::string s = "(";
    for ( std::size_t i = 0; i < e.children().size(); ++i )
    {
      if ( i )
        s += op;
      s += to_string( e.children()[i], universe );
    }
    return s + ")";
  }
  }
}

/// Header (when the universe is non-empty) plus one member per line.
inline std::string to_string( expression_set const& s )
{
  std::ostringstream out;
  if ( !s.universe().empty() )
  {
    out << "vars:";
    for ( auto const& n : s.universe().names() )
      out << ' ' << n;
    out << '\n';
  }
  for ( auto const& m : s.members() )
    out << to_string( m, s.universe() ) << '\n';
  return out.str();
}

} // namespace probedepth
