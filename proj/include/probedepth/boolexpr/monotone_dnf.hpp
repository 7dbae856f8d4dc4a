/*!
  \file monotone_dnf.hpp
  \brief Monotone DNFs kept in absorbed (prime-implicant) form

  Constant False is the empty term set; constant True is the set holding the
  empty term.
*/

#pragma once

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "expression.hpp"
#include "parse.hpp"

namespace probedepth
{

/// Sorted, duplicate-free list of variable indices.
using term = std::vector<var_index>;

namespace detail
{

inline bool is_subset( term const& small, term const& big )
{
  return small.size() <= big.size() && std::includes( big.begin(), big.end(), small.begin(), small.end() );
}

inline term make_term( std::vector<var_index> vars )
{
  std::sort( vars.begin(), vars.end() );
  vars.erase( std::unique( vars.begin(), vars.end() ), vars.end() );
  return vars;
}

/* sorts by (size, lexicographic), drops duplicates and supersets */
inline std::vector<term> absorb( std::vector<term> terms )
{
  std::sort( terms.begin(), terms.end(), []( term const& a, term const& b ) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  } );
  std::vector<term> kept;
  for ( auto& t : terms )
  {
    bool subsumed = false;
    for ( auto const& k : kept )
      if ( is_subset( k, t ) )
      {
        subsumed = true;
        break;
      }
    if ( !subsumed )
      kept.push_back( std::move( t ) );
  }
  std::sort( kept.begin(), kept.end() );
  return kept;
}

} // namespace detail

class monotone_dnf
{
public:
  monotone_dnf() = default;

  monotone_dnf( variable_universe universe, std::vector<term> terms ) : universe_( std::move( universe ) )
  {
    for ( auto& t : terms )
    {
      t = detail::make_term( std::move( t ) );
      for ( auto v : t )
        if ( v >= universe_.size() )
          throw unknown_variable( "term references a variable outside the universe" );
    }
    terms_ = detail::absorb( std::move( terms ) );
  }

  static monotone_dnf constant( variable_universe universe, bool value )
  {
    return monotone_dnf( std::move( universe ), value ? std::vector<term>{ term{} } : std::vector<term>{} );
  }

  static monotone_dnf single( variable_universe universe, var_index v )
  {
    return monotone_dnf( std::move( universe ), { term{ v } } );
  }

  variable_universe const& universe() const noexcept { return universe_; }
  std::vector<term> const& terms() const noexcept { return terms_; }

  bool is_false() const noexcept { return terms_.empty(); }
  bool is_true() const noexcept { return terms_.size() == 1 && terms_.front().empty(); }

  std::size_t max_term_size() const
  {
    std::size_t k = 0;
    for ( auto const& t : terms_ )
      k = std::max( k, t.size() );
    return k;
  }

  /// Occurring variables, sorted.
  std::vector<var_index> variables() const
  {
    std::set<var_index> vs;
    for ( auto const& t : terms_ )
      vs.insert( t.begin(), t.end() );
    return { vs.begin(), vs.end() };
  }

  bool evaluate( valuation const& v ) const
  {
    return std::any_of( terms_.begin(), terms_.end(), [&]( term const& t ) {
      return std::all_of( t.begin(), t.end(), [&]( var_index x ) { return v[x]; } );
    } );
  }

  /// Disjunction over the same universe, absorbed.
  friend monotone_dnf operator|( monotone_dnf const& a, monotone_dnf const& b )
  {
    auto terms = a.terms_;
    terms.insert( terms.end(), b.terms_.begin(), b.terms_.end() );
    return monotone_dnf( a.universe_, std::move( terms ) );
  }

  /// Term-wise conjunction with idempotence, absorbed.
  friend monotone_dnf operator&( monotone_dnf const& a, monotone_dnf const& b )
  {
    std::vector<term> terms;
    terms.reserve( a.terms_.size() * b.terms_.size() );
    for ( auto const& s : a.terms_ )
      for ( auto const& t : b.terms_ )
      {
        term u;
        std::set_union( s.begin(), s.end(), t.begin(), t.end(), std::back_inserter( u ) );
        terms.push_back( std::move( u ) );
      }
    return monotone_dnf( a.universe_, std::move( terms ) );
  }

  friend bool operator==( monotone_dnf const& a, monotone_dnf const& b ) { return a.terms_ == b.terms_; }

  /// Sum-of-products expression: constants for the trivial cases.
  expression to_expression() const
  {
    if ( is_false() )
      return expression::constant( false );
    if ( is_true() )
      return expression::constant( true );
    std::vector<expression> disj;
    for ( auto const& t : terms_ )
    {
      if ( t.size() == 1 )
      {
        disj.push_back( expression::variable( t.front() ) );
        continue;
      }
      std::vector<expression> conj;
      for ( auto v : t )
        conj.push_back( expression::variable( v ) );
      disj.push_back( expression::conjunction( std::move( conj ) ) );
    }
    return disj.size() == 1 ? disj.front() : expression::disjunction( std::move( disj ) );
  }

  truth_table truth_table_over( std::vector<var_index> const& vars, unsigned cap = default_truth_table_cap ) const
  {
    return probedepth::truth_table_over( to_expression(), vars, cap );
  }

private:
  variable_universe universe_;
  std::vector<term> terms_;
};

inline std::string to_string( monotone_dnf const& d )
{
  return to_string( d.to_expression(), d.universe() );
}

namespace detail
{

inline std::vector<term> dnf_terms( expression const& e )
{
  switch ( e.kind() )
  {
  case node_kind::constant:
    return e.value() ? std::vector<term>{ term{} } : std::vector<term>{};
  case node_kind::variable:
    return { term{ e.var() } };
  case node_kind::negation:
    throw domain_error( "expression contains negation; monotone DNF requires a negation-free expression" );
  case node_kind::disjunction:
  {
    std::vector<term> all;
    for ( auto const& c : e.children() )
    {
      auto ts = dnf_terms( c );
      all.insert( all.end(), ts.begin(), ts.end() );
    }
    return absorb( std::move( all ) );
  }
  case node_kind::conjunction:
  {
    std::vector<term> acc{ term{} };
    for ( auto const& c : e.children() )
    {
      auto ts = dnf_terms( c );
      std::vector<term> next;
      for ( auto const& s : acc )
        for ( auto const& t : ts )
        {
          term u;
          std::set_union( s.begin(), s.end(), t.begin(), t.end(), std::back_inserter( u ) );
          next.push_back( std::move( u ) );
        }
      acc = absorb( std::move( next ) );
    }
    return acc;
  }
  }
  return {};
}

} // namespace detail

/*! \brief Expands a negation-free expression into absorbed monotone DNF */
inline monotone_dnf to_monotone_dnf( expression const& e, variable_universe const& universe )
{
  return monotone_dnf( universe, detail::dnf_terms( e ) );
}

/*! \brief Minimal transversals (hitting sets) of a hypergraph.

  Berge's incremental dualization: edges are added one at a time and the
  transversal family is re-minimized after each step. An empty edge list has
  the single empty transversal; a hypergraph with an empty edge has none.
*/
inline std::vector<term> minimal_transversals( std::vector<term> const& edges )
{
  std::vector<term> tr{ term{} };
  for ( auto const& edge : edges )
  {
    std::vector<term> next;
    for ( auto const& t : tr )
    {
      bool hits = false;
      for ( auto v : edge )
        if ( std::binary_search( t.begin(), t.end(), v ) )
        {
          hits = true;
          break;
        }
      if ( hits )
      {
        next.push_back( t );
        continue;
      }
      for ( auto v : edge )
      {
        term u = t;
        u.insert( std::upper_bound( u.begin(), u.end(), v ), v );
        next.push_back( std::move( u ) );
      }
    }
    tr = detail::absorb( std::move( next ) );
  }
  return tr;
}

/// Prime implicates (as variable sets of CNF clauses) of a monotone DNF.
inline std::vector<term> prime_implicates( monotone_dnf const& d )
{
  return minimal_transversals( d.terms() );
}

/*! \brief max(largest prime implicant, largest prime implicate).

  Lower bound on the decision-tree depth of a monotone expression: certifying
  True needs a whole term, certifying False a whole clause.
*/
inline std::size_t monotone_depth_lower_bound( expression const& e, variable_universe const& universe )
{
  if ( contains_negation( e ) )
    throw domain_error( "lower bound requires a monotone (negation-free) expression" );
  auto const d = to_monotone_dnf( e, universe );
  if ( d.is_false() || d.is_true() )
    return 0;
  std::size_t bound = d.max_term_size();
  for ( auto const& c : prime_implicates( d ) )
    bound = std::max( bound, c.size() );
  return bound;
}

} // namespace probedepth
