/*!
  \file expression.hpp
  \brief Immutable Boolean expression trees and expression sets

  Variables are referenced by index into a variable_universe that is kept
  alongside (see expression_set). Nodes are shared and never mutated.
*/

#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "../errors.hpp"
#include "truth_table.hpp"
#include "universe.hpp"

namespace probedepth
{

enum class node_kind
{
  constant,
  variable,
  negation,
  conjunction,
  disjunction
};

class expression
{
public:
  struct node
  {
    node_kind kind = node_kind::constant;
    bool value = false;
    var_index var = 0;
    std::vector<expression> children;
  };

  /// Constant False.
  expression() : expression( constant( false ) ) {}

  static expression constant( bool value )
  {
    static auto const t = std::make_shared<node const>( node{ node_kind::constant, true, 0, {} } );
    static auto const f = std::make_shared<node const>( node{ node_kind::constant, false, 0, {} } );
    return expression( value ? t : f );
  }

  static expression variable( var_index v )
  {
    return expression( std::make_shared<node const>( node{ node_kind::variable, false, v, {} } ) );
  }

  static expression negation( expression child )
  {
    return expression( std::make_shared<node const>( node{ node_kind::negation, false, 0, { std::move( child ) } } ) );
  }

  static expression conjunction( std::vector<expression> children ) { return nary( node_kind::conjunction, std::move( children ) ); }
  static expression disjunction( std::vector<expression> children ) { return nary( node_kind::disjunction, std::move( children ) ); }

  node_kind kind() const noexcept { return node_->kind; }
  bool is_constant() const noexcept { return node_->kind == node_kind::constant; }
  bool is_variable() const noexcept { return node_->kind == node_kind::variable; }
  bool value() const noexcept { return node_->value; }
  var_index var() const noexcept { return node_->var; }
  std::vector<expression> const& children() const noexcept { return node_->children; }

  /// Same node object (cheap identity, not semantic equality).
  bool same( expression const& o ) const noexcept { return node_ == o.node_; }

private:
  explicit expression( std::shared_ptr<node const> n ) : node_( std::move( n ) ) {}

  static expression nary( node_kind k, std::vector<expression> children )
  {
    if ( children.size() < 2 )
      throw domain_error( "conjunction/disjunction needs at least two children" );
    return expression( std::make_shared<node const>( node{ k, false, 0, std::move( children ) } ) );
  }

  std::shared_ptr<node const> node_;
};

/* ---------------------------------------------------------------------- */
/* structural queries                                                      */
/* ---------------------------------------------------------------------- */

template<typename Fn>
void foreach_variable_occurrence( expression const& e, Fn&& fn )
{
  switch ( e.kind() )
  {
  case node_kind::constant:
    return;
  case node_kind::variable:
    fn( e.var() );
    return;
  default:
    for ( auto const& c : e.children() )
      foreach_variable_occurrence( c, fn );
  }
}

/// Occurring variables, sorted by index.
inline std::vector<var_index> support( expression const& e )
{
  std::set<var_index> vars;
  foreach_variable_occurrence( e, [&]( var_index v ) { vars.insert( v ); } );
  return { vars.begin(), vars.end() };
}

inline bool contains_negation( expression const& e )
{
  if ( e.kind() == node_kind::negation )
    return true;
  return std::any_of( e.children().begin(), e.children().end(), []( auto const& c ) { return contains_negation( c ); } );
}

inline bool contains_constant( expression const& e )
{
  if ( e.is_constant() )
    return true;
  return std::any_of( e.children().begin(), e.children().end(), []( auto const& c ) { return contains_constant( c ); } );
}

/// Structural equality of syntax trees.
inline bool structurally_equal( expression const& a, expression const& b )
{
  if ( a.kind() != b.kind() || a.children().size() != b.children().size() )
    return false;
  if ( a.kind() == node_kind::constant )
    return a.value() == b.value();
  if ( a.kind() == node_kind::variable )
    return a.var() == b.var();
  for ( std::size_t i = 0; i < a.children().size(); ++i )
    if ( !structurally_equal( a.children()[i], b.children()[i] ) )
      return false;
  return true;
}

/* ---------------------------------------------------------------------- */
/* semantics                                                               */
/* ---------------------------------------------------------------------- */

inline bool evaluate( expression const& e, valuation const& v )
{
  switch ( e.kind() )
  {
  case node_kind::constant:
    return e.value();
  case node_kind::variable:
    return v[e.var()];
  case node_kind::negation:
    return !evaluate( e.children().front(), v );
  case node_kind::conjunction:
    return std::all_of( e.children().begin(), e.children().end(), [&]( auto const& c ) { return evaluate( c, v ); } );
  case node_kind::disjunction:
    return std::any_of( e.children().begin(), e.children().end(), [&]( auto const& c ) { return evaluate( c, v ); } );
  }
  return false;
}

/// Support size cap for truth-table based operations.
inline constexpr unsigned default_truth_table_cap = 20;

namespace detail
{

inline truth_table tabulate( expression const& e, std::vector<int> const& position, unsigned m )
{
  switch ( e.kind() )
  {
  case node_kind::constant:
    return truth_table::constant( m, e.value() );
  case node_kind::variable:
  {
    auto const p = e.var() < position.size() ? position[e.var()] : -1;
    if ( p < 0 )
      throw domain_error( "expression variable outside the tabulated variable list" );
    return truth_table::nth_var( m, static_cast<unsigned>( p ) );
  }
  case node_kind::negation:
    return ~tabulate( e.children().front(), position, m );
  case node_kind::conjunction:
  {
    auto t = tabulate( e.children().front(), position, m );
    for ( std::size_t i = 1; i < e.children().size(); ++i )
      t &= tabulate( e.children()[i], position, m );
    return t;
  }
  case node_kind::disjunction:
  {
    auto t = tabulate( e.children().front(), position, m );
    for ( std::size_t i = 1; i < e.children().size(); ++i )
      t |= tabulate( e.children()[i], position, m );
    return t;
  }
  }
  return truth_table( m );
}

} // namespace detail

/*! \brief Truth table of `e` over the listed variables (bit j = vars[j]).

  Every variable occurring in `e` must be listed.
*/
inline truth_table truth_table_over( expression const& e, std::vector<var_index> const& vars,
                                     unsigned cap = default_truth_table_cap )
{
  if ( vars.size() > cap )
    throw capacity_exceeded( "support of " + std::to_string( vars.size() ) + " variables exceeds cap " + std::to_string( cap ) );
  var_index top = 0;
  for ( auto v : vars )
    top = std::max( top, v + 1 );
  foreach_variable_occurrence( e, [&]( var_index v ) { top = std::max( top, v + 1 ); } );
  std::vector<int> position( top, -1 );
  for ( std::size_t j = 0; j < vars.size(); ++j )
    position[vars[j]] = static_cast<int>( j );
  return detail::tabulate( e, position, static_cast<unsigned>( vars.size() ) );
}

/// Truth table over the sorted support of `e`.
inline truth_table truth_table_of( expression const& e, unsigned cap = default_truth_table_cap )
{
  return truth_table_over( e, support( e ), cap );
}

/// Constant value if `e` is semantically constant; brute force over its support.
inline std::optional<bool> is_constant( expression const& e, unsigned cap = default_truth_table_cap )
{
  return truth_table_of( e, cap ).constant_value();
}

/* ---------------------------------------------------------------------- */
/* simplification and restriction                                          */
/* ---------------------------------------------------------------------- */

/*! \brief Constant propagation, double-negation removal and flattening.

  Applies identity/annihilator rules for conjunction and disjunction, removes
  double negations and merges nested same-operator nodes. The result contains
  no constant unless it is itself a constant. No distribution is performed.
*/
inline expression simplify( expression const& e )
{
  switch ( e.kind() )
  {
  case node_kind::constant:
  case node_kind::variable:
    return e;
  case node_kind::negation:
  {
    auto c = simplify( e.children().front() );
    if ( c.is_constant() )
      return expression::constant( !c.value() );
    if ( c.kind() == node_kind::negation )
      return c.children().front();
    return expression::negation( std::move( c ) );
  }
  case node_kind::conjunction:
  case node_kind::disjunction:
  {
    bool const is_and = e.kind() == node_kind::conjunction;
    std::vector<expression> kept;
    for ( auto const& child : e.children() )
    {
      auto c = simplify( child );
      if ( c.is_constant() )
      {
        if ( c.value() != is_and ) /* annihilator */
          return c;
        continue;                  /* identity */
      }
      if ( c.kind() == e.kind() )
        kept.insert( kept.end(), c.children().begin(), c.children().end() );
      else
        kept.push_back( std::move( c ) );
    }
    if ( kept.empty() )
      return expression::constant( is_and );
    if ( kept.size() == 1 )
      return kept.front();
    return is_and ? expression::conjunction( std::move( kept ) ) : expression::disjunction( std::move( kept ) );
  }
  }
  return e;
}

namespace detail
{

inline expression substitute( expression const& e, var_index x, bool b )
{
  switch ( e.kind() )
  {
  case node_kind::constant:
    return e;
  case node_kind::variable:
    return e.var() == x ? expression::constant( b ) : e;
  case node_kind::negation:
    return expression::negation( substitute( e.children().front(), x, b ) );
  default:
  {
    std::vector<expression> ch;
    ch.reserve( e.children().size() );
    for ( auto const& c : e.children() )
      ch.push_back( substitute( c, x, b ) );
    return e.kind() == node_kind::conjunction ? expression::conjunction( std::move( ch ) )
                                              : expression::disjunction( std::move( ch ) );
  }
  }
}

/// Applies `map` to every variable index.
template<typename Fn>
expression rename( expression const& e, Fn&& map )
{
  switch ( e.kind() )
  {
  case node_kind::constant:
    return e;
  case node_kind::variable:
    return expression::variable( map( e.var() ) );
  case node_kind::negation:
    return expression::negation( rename( e.children().front(), map ) );
  default:
  {
    std::vector<expression> ch;
    for ( auto const& c : e.children() )
      ch.push_back( rename( c, map ) );
    return e.kind() == node_kind::conjunction ? expression::conjunction( std::move( ch ) )
                                              : expression::disjunction( std::move( ch ) );
  }
  }
}

} // namespace detail

/// phi_{x=b}: substitutes `b` for `x` and simplifies. Indices are unchanged.
inline expression restrict( expression const& e, var_index x, bool b )
{
  return simplify( detail::substitute( e, x, b ) );
}

/* ---------------------------------------------------------------------- */
/* expression sets                                                         */
/* ---------------------------------------------------------------------- */

/*! \brief A non-empty ordered list of expressions over a shared universe */
class expression_set
{
public:
  expression_set( variable_universe universe, std::vector<expression> members )
      : universe_( std::move( universe ) ), members_( std::move( members ) )
  {
    if ( members_.empty() )
      throw domain_error( "expression set must have at least one member" );
    for ( auto const& m : members_ )
      foreach_variable_occurrence( m, [&]( var_index v ) {
        if ( v >= universe_.size() )
          throw unknown_variable( "member references variable index " + std::to_string( v ) + " outside the universe" );
      } );
  }

  variable_universe const& universe() const noexcept { return universe_; }
  std::vector<expression> const& members() const noexcept { return members_; }
  expression const& operator[]( std::size_t i ) const { return members_.at( i ); }
  std::size_t size() const noexcept { return members_.size(); }
  std::size_t num_vars() const noexcept { return universe_.size(); }

private:
  variable_universe universe_;
  std::vector<expression> members_;
};

/// Phi_{x=b}: member-wise restriction; `x` leaves the universe.
inline expression_set restrict_set( expression_set const& s, var_index x, bool b )
{
  if ( x >= s.num_vars() )
    throw unknown_variable( "restriction variable outside the universe" );
  std::vector<expression> members;
  members.reserve( s.size() );
  for ( auto const& m : s.members() )
    members.push_back( detail::rename( restrict( m, x, b ), [x]( var_index v ) { return v > x ? v - 1 : v; } ) );
  return expression_set( s.universe().without( x ), std::move( members ) );
}

inline expression_set restrict_set( expression_set const& s, std::string const& name, bool b )
{
  return restrict_set( s, s.universe().index_of( name ), b );
}

/// All members tabulated over the full universe, in declaration order.
inline std::vector<truth_table> member_tables( expression_set const& s, unsigned cap = default_truth_table_cap )
{
  std::vector<var_index> all( s.num_vars() );
  for ( var_index i = 0; i < all.size(); ++i )
    all[i] = i;
  std::vector<truth_table> out;
  for ( auto const& m : s.members() )
    out.push_back( truth_table_over( m, all, cap ) );
  return out;
}

} // namespace probedepth
