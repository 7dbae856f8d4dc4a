/*!
  \file universe.hpp
  \brief Ordered variable universes and (partial) valuations over them
*/

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "../errors.hpp"

namespace probedepth
{

/// Index of a variable inside its universe.
using var_index = std::uint32_t;

/*! \brief True iff `name` matches `[A-Za-z_][A-Za-z0-9_]*` */
inline bool is_identifier( std::string_view name )
{
  if ( name.empty() )
    return false;
  auto alpha = []( char c ) { return ( c >= 'a' && c <= 'z' ) || ( c >= 'A' && c <= 'Z' ) || c == '_'; };
  auto digit = []( char c ) { return c >= '0' && c <= '9'; };
  if ( !alpha( name.front() ) )
    return false;
  for ( char c : name.substr( 1 ) )
    if ( !alpha( c ) && !digit( c ) )
      return false;
  return true;
}

/*! \brief The ordered set X of variable names.

  Declaration order is significant: it fixes truth-table bit order and all
  deterministic tie-breaking.
*/
class variable_universe
{
public:
  variable_universe() = default;

  explicit variable_universe( std::vector<std::string> names )
  {
    for ( auto& n : names )
      add( std::move( n ) );
  }

  /// Appends a new variable; throws on duplicates or invalid identifiers.
  var_index add( std::string name )
  {
    if ( !is_identifier( name ) )
      throw domain_error( "invalid variable name '" + name + "'" );
    if ( index_.count( name ) )
      throw domain_error( "duplicate variable '" + name + "'" );
    auto const idx = static_cast<var_index>( names_.size() );
    index_.emplace( name, idx );
    names_.push_back( std::move( name ) );
    return idx;
  }

  /// Returns the index of `name`, adding it if absent.
  var_index intern( std::string_view name )
  {
    if ( auto it = index_.find( std::string( name ) ); it != index_.end() )
      return it->second;
    return add( std::string( name ) );
  }

  std::optional<var_index> find( std::string_view name ) const
  {
    if ( auto it = index_.find( std::string( name ) ); it != index_.end() )
      return it->second;
    return std::nullopt;
  }

  var_index index_of( std::string_view name ) const
  {
    if ( auto idx = find( name ) )
      return *idx;
    throw unknown_variable( "unknown variable '" + std::string( name ) + "'" );
  }

  std::string const& name( var_index i ) const { return names_.at( i ); }
  std::vector<std::string> const& names() const noexcept { return names_; }
  std::size_t size() const noexcept { return names_.size(); }
  bool empty() const noexcept { return names_.empty(); }

  /// Universe with variable `x` removed; later indices shift down by one.
  variable_universe without( var_index x ) const
  {
    variable_universe out;
    for ( var_index i = 0; i < names_.size(); ++i )
      if ( i != x )
        out.add( names_[i] );
    return out;
  }

  friend bool operator==( variable_universe const& a, variable_universe const& b ) { return a.names_ == b.names_; }

private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, var_index> index_;
};

/*! \brief Total assignment of the universe variables, indexed by var_index */
class valuation
{
public:
  valuation() = default;
  explicit valuation( std::size_t n, bool init = false ) : values_( n, init ) {}
  explicit valuation( std::vector<bool> values ) : values_( std::move( values ) ) {}

  /// Decodes a little-endian bit pattern: bit i gives variable i.
  static valuation from_bits( std::size_t n, std::uint64_t bits )
  {
    valuation v( n );
    for ( std::size_t i = 0; i < n && i < 64; ++i )
      v.values_[i] = ( bits >> i ) & 1u;
    return v;
  }

  bool operator[]( var_index i ) const { return values_.at( i ); }
  void set( var_index i, bool b ) { values_.at( i ) = b; }
  std::size_t size() const noexcept { return values_.size(); }
  std::vector<bool> const& values() const noexcept { return values_; }

private:
  std::vector<bool> values_;
};

/*! \brief Partial assignment; unassigned variables map to nullopt */
class partial_valuation
{
public:
  partial_valuation() = default;
  explicit partial_valuation( std::size_t n ) : values_( n ) {}

  void assign( var_index i, bool b )
  {
    if ( values_.at( i ).has_value() )
      throw domain_error( "variable assigned twice" );
    values_[i] = b;
  }
  std::optional<bool> operator[]( var_index i ) const { return values_.at( i ); }
  bool assigned( var_index i ) const { return values_.at( i ).has_value(); }
  std::size_t size() const noexcept { return values_.size(); }

  std::size_t count() const
  {
    std::size_t c = 0;
    for ( auto const& v : values_ )
      c += v.has_value();
    return c;
  }

private:
  std::vector<std::optional<bool>> values_;
};

} // namespace probedepth
