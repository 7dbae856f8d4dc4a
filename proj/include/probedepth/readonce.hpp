/*!
  \file readonce.hpp
  \brief Read-once structure, non-simplifiability and monotone read-once factoring

  An overall read-once set whose members contain no constant occurrence
  (unless they are constants) is evasive: fixing any variable the "wrong"
  way keeps one member read-once, constant-free and one variable smaller.
*/

#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "boolexpr.hpp"
#include "graphdnf.hpp"

namespace probedepth
{

/*! \brief Literal occurrence counts per member and across a set */
class occurrence_index
{
public:
  explicit occurrence_index( expression_set const& s ) : per_member_( s.size() )
  {
    for ( std::size_t i = 0; i < s.size(); ++i )
      foreach_variable_occurrence( s[i], [&]( var_index v ) {
        ++per_member_[i][v];
        ++total_[v];
      } );
  }

  std::size_t count( var_index v ) const
  {
    auto it = total_.find( v );
    return it == total_.end() ? 0 : it->second;
  }

  std::size_t count( std::size_t member, var_index v ) const
  {
    auto const& m = per_member_.at( member );
    auto it = m.find( v );
    return it == m.end() ? 0 : it->second;
  }

  std::map<var_index, std::size_t> const& totals() const noexcept { return total_; }
  std::map<var_index, std::size_t> const& member( std::size_t i ) const { return per_member_.at( i ); }

private:
  std::vector<std::map<var_index, std::size_t>> per_member_;
  std::map<var_index, std::size_t> total_;
};

inline bool is_read_once( expression const& e )
{
  std::set<var_index> seen;
  bool ok = true;
  foreach_variable_occurrence( e, [&]( var_index v ) { ok = seen.insert( v ).second && ok; } );
  return ok;
}

/// No variable occurs twice, within or across members.
inline bool is_overall_read_once( expression_set const& s )
{
  occurrence_index const idx( s );
  return std::all_of( idx.totals().begin(), idx.totals().end(), []( auto const& kv ) { return kv.second <= 1; } );
}

/// A constant, or an expression with no constant occurrence.
inline bool is_non_simplifiable( expression const& e )
{
  return e.is_constant() || !contains_constant( e );
}

/*! \brief Read-once factoring of an absorbed monotone DNF.

  One term becomes its conjunction. Variables common to every term are
  factored out before recursing. Otherwise terms are grouped by variable
  co-occurrence and the groups are factored independently and disjoined. A
  single group with no common variable makes the procedure give up
  (nullopt), which does not prove that no read-once form exists.
*/
inline std::optional<expression> factor_read_once( monotone_dnf const& d )
{
  auto const& terms = d.terms();
  if ( d.is_false() || d.is_true() )
    return expression::constant( d.is_true() );

  auto conj = []( std::vector<expression> parts ) {
    return parts.size() == 1 ? parts.front() : expression::conjunction( std::move( parts ) );
  };

  if ( terms.size() == 1 )
  {
    std::vector<expression> vars;
    for ( auto v : terms.front() )
      vars.push_back( expression::variable( v ) );
    return conj( std::move( vars ) );
  }

  term common = terms.front();
  for ( auto const& t : terms )
  {
    term keep;
    std::set_intersection( common.begin(), common.end(), t.begin(), t.end(), std::back_inserter( keep ) );
    common = std::move( keep );
  }
  if ( !common.empty() )
  {
    std::vector<term> rest;
    for ( auto const& t : terms )
    {
      term r;
      std::set_difference( t.begin(), t.end(), common.begin(), common.end(), std::back_inserter( r ) );
      rest.push_back( std::move( r ) );
    }
    auto inner = factor_read_once( monotone_dnf( d.universe(), std::move( rest ) ) );
    if ( !inner )
      return std::nullopt;
    std::vector<expression> parts;
    for ( auto v : common )
      parts.push_back( expression::variable( v ) );
    parts.push_back( *inner );
    return conj( std::move( parts ) );
  }

  /* group terms sharing variables */
  detail::disjoint_sets ds( terms.size() );
  std::map<var_index, std::size_t> owner;
  for ( std::size_t i = 0; i < terms.size(); ++i )
    for ( auto v : terms[i] )
      if ( auto [it, fresh] = owner.emplace( v, i ); !fresh )
        ds.unite( i, it->second );
  std::map<std::size_t, std::vector<term>> groups;
  for ( std::size_t i = 0; i < terms.size(); ++i )
    groups[ds.find( i )].push_back( terms[i] );
  if ( groups.size() == 1 )
    return std::nullopt;

  std::vector<expression> disj;
  for ( auto& [_, group] : groups )
  {
    auto f = factor_read_once( monotone_dnf( d.universe(), std::move( group ) ) );
    if ( !f )
      return std::nullopt;
    disj.push_back( *f );
  }
  return expression::disjunction( std::move( disj ) );
}

/*! \brief Sufficient test for evasiveness; never answers "not evasive".

  Returns true when the set (or the set with its monotone members replaced
  by read-once factorizations) is overall read-once, every member is
  non-simplifiable and every universe variable occurs. Returns nullopt
  otherwise.
*/
inline std::optional<bool> evasive_by_read_once( expression_set const& s )
{
  auto holds = []( expression_set const& t ) {
    if ( !is_overall_read_once( t ) )
      return false;
    if ( !std::all_of( t.members().begin(), t.members().end(), []( auto const& m ) { return is_non_simplifiable( m ); } ) )
      return false;
    occurrence_index const idx( t );
    return idx.totals().size() == t.num_vars();
  };
  if ( holds( s ) )
    return true;

  std::vector<expression> factored;
  for ( auto const& m : s.members() )
  {
    if ( is_read_once( m ) || contains_negation( m ) )
    {
      factored.push_back( m );
      continue;
    }
    auto f = factor_read_once( to_monotone_dnf( m, s.universe() ) );
    factored.push_back( f ? *f : m );
  }
  if ( holds( expression_set( s.universe(), std::move( factored ) ) ) )
    return true;
  return std::nullopt;
}

} // namespace probedepth
