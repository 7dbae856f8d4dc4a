/*!
  \file families.hpp
  \brief Named expression families and the recursive optimal strategy for psi(i)

  psi(0) = (w & x) | (x & y) | (y & z) and
  psi(i+1) = (u<i> & psi(i)) | (u<i> & v<i>) | (v<i> & psi'(i)),
  where psi'(i) appends "p<i>" to every variable of psi(i). Variables are
  numbered in order of first occurrence.
*/

#pragma once

#include <cstddef>
#include <string>

#include "boolexpr.hpp"
#include "strategy.hpp"

namespace probedepth
{

enum class family_kind
{
  psi,
  path,
  and_,
  or_
};

inline constexpr unsigned max_psi_level = 6;

inline family_kind family_from_string( std::string const& s )
{
  if ( s == "psi" )
    return family_kind::psi;
  if ( s == "path" )
    return family_kind::path;
  if ( s == "and" )
    return family_kind::and_;
  if ( s == "or" )
    return family_kind::or_;
  throw domain_error( "unknown family '" + s + "' (expected psi, path, and, or)" );
}

namespace detail
{

inline std::string psi_text( unsigned i, std::string const& s )
{
  if ( i == 0 )
    return "(w" + s + " & x" + s + ") | (x" + s + " & y" + s + ") | (y" + s + " & z" + s + ")";
  auto const l = std::to_string( i - 1 );
  auto const u = "u" + l + s, v = "v" + l + s;
  return "(" + u + " & (" + psi_text( i - 1, s ) + ")) | (" + u + " & " + v + ") | (" + v + " & (" +
         psi_text( i - 1, "p" + l + s ) + "))";
}

inline std::string chain( unsigned first, unsigned last, char const* op )
{
  std::string out;
  for ( unsigned j = first; j <= last; ++j )
    out += ( j == first ? "x" : std::string( " " ) + op + " x" ) + std::to_string( j );
  return out;
}

} // namespace detail

/// Text of the family member in the expression grammar.
inline std::string family_text( family_kind kind, unsigned param )
{
  switch ( kind )
  {
  case family_kind::psi:
    if ( param > max_psi_level )
      throw domain_error( "psi level must be at most " + std::to_string( max_psi_level ) );
    return detail::psi_text( param, "" );
  case family_kind::path:
  {
    if ( param < 1 )
      throw domain_error( "path needs n >= 1" );
    std::string out;
    for ( unsigned j = 0; j < param; ++j )
      out += ( j ? " | " : "" ) + std::string( "(x" ) + std::to_string( j ) + " & x" + std::to_string( j + 1 ) + ")";
    return out;
  }
  case family_kind::and_:
  case family_kind::or_:
    if ( param < 1 )
      throw domain_error( "and/or need n >= 1" );
    return detail::chain( 1, param, kind == family_kind::and_ ? "&" : "|" );
  }
  return {};
}

inline expression_set generate( family_kind kind, unsigned param )
{
  return parse_expressions( family_text( kind, param ) );
}

namespace detail
{

struct psi_builder
{
  decision_diagram& d;
  std::size_t yes, no;

  var_index at( std::string const& name ) const { return d.universe().index_of( name ); }

  std::size_t build( unsigned i, std::string const& s )
  {
    if ( i == 0 )
    {
      auto const y_true = d.add_probe( at( "y" + s ), yes, no );
      auto const w = d.add_probe( at( "w" + s ), yes, y_true );
      auto const z = d.add_probe( at( "z" + s ), yes, no );
      auto const y_false = d.add_probe( at( "y" + s ), z, no );
      return d.add_probe( at( "x" + s ), w, y_false );
    }
    auto const l = std::to_string( i - 1 );
    auto const same = build( i - 1, s );
    auto const primed = build( i - 1, "p" + l + s );
    auto const v_true = d.add_probe( at( "v" + l + s ), yes, same );
    auto const v_false = d.add_probe( at( "v" + l + s ), primed, no );
    return d.add_probe( at( "u" + l + s ), v_true, v_false );
  }
};

} // namespace detail

/// Probes u<i>, v<i> first and recurses into psi(i) or psi'(i); depth 2(i+2)-1.
inline decision_diagram psi_strategy( unsigned i )
{
  auto const s = generate( family_kind::psi, i );
  decision_diagram d( s.universe(), 1 );
  detail::psi_builder b{ d, d.add_leaf( { true } ), d.add_leaf( { false } ) };
  d.set_root( b.build( i, "" ) );
  return d;
}

} // namespace probedepth
