/*!
  \file eval.hpp
  \brief SPJU evaluation with Boolean provenance, and the 2-relation DNF encoding

  Scans annotate each tuple with its own variable, joins conjoin annotations
  term-wise, and projection/union merge equal value tuples by disjunction.
  Annotations stay in absorbed monotone DNF. For every output tuple t and
  valuation v, the annotation is true under v iff t is in the query result
  over the possible world of v.
*/

#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "database.hpp"
#include "query.hpp"

namespace probedepth
{

struct provenanced_row
{
  std::vector<value> values;
  monotone_dnf annotation;
};

struct provenanced_result
{
  std::vector<std::string> columns;
  /// Sorted by value tuple; value tuples are distinct.
  std::vector<provenanced_row> rows;

  std::optional<monotone_dnf> find( std::vector<value> const& values ) const
  {
    for ( auto const& r : rows )
      if ( r.values == values )
        return r.annotation;
    return std::nullopt;
  }
};

namespace detail
{

struct table
{
  std::vector<std::string> columns;
  std::map<std::vector<value>, monotone_dnf> rows;

  void merge( std::vector<value> key, monotone_dnf const& ann )
  {
    auto it = rows.find( key );
    if ( it == rows.end() )
      rows.emplace( std::move( key ), ann );
    else
      it->second = it->second | ann;
  }
};

inline std::size_t resolve_column( std::vector<std::string> const& columns, std::string const& name )
{
  for ( std::size_t i = 0; i < columns.size(); ++i )
    if ( columns[i] == name )
      return i;
  if ( name.find( '.' ) == std::string::npos )
  {
    std::optional<std::size_t> hit;
    for ( std::size_t i = 0; i < columns.size(); ++i )
    {
      auto const dot = columns[i].find( '.' );
      if ( dot != std::string::npos && columns[i].substr( dot + 1 ) == name )
      {
        if ( hit )
          throw domain_error( "ambiguous column '" + name + "'" );
        hit = i;
      }
    }
    if ( hit )
      return *hit;
  }
  throw domain_error( "unknown column '" + name + "'" );
}

inline value operand_value( operand const& o, std::vector<std::string> const& columns, std::vector<value> const& row )
{
  switch ( o.type )
  {
  case operand::kind::literal:
    return o.literal;
  case operand::kind::column:
    return row[resolve_column( columns, o.column )];
  case operand::kind::year:
  {
    auto const& v = row[resolve_column( columns, o.column )];
    auto const* s = std::get_if<std::string>( &v );
    if ( !s || s->size() < 4 || !std::all_of( s->begin(), s->begin() + 4, []( char c ) { return std::isdigit( static_cast<unsigned char>( c ) ); } ) )
      throw domain_error( "type mismatch: year() needs a date string in column '" + o.column + "'" );
    return static_cast<std::int64_t>( std::stoll( s->substr( 0, 4 ) ) );
  }
  }
  return {};
}

inline std::string lowercase( std::string s )
{
  for ( auto& c : s )
    c = static_cast<char>( std::tolower( static_cast<unsigned char>( c ) ) );
  return s;
}

inline bool holds( predicate const& p, std::vector<std::string> const& columns, std::vector<value> const& row )
{
  if ( p.type == predicate::kind::contains_ci )
  {
    auto const* s = std::get_if<std::string>( &row[resolve_column( columns, p.column )] );
    if ( !s )
      throw domain_error( "type mismatch: contains_ci on a non-string column '" + p.column + "'" );
    return lowercase( *s ).find( lowercase( p.pattern ) ) != std::string::npos;
  }
  auto const a = operand_value( p.lhs, columns, row );
  auto const b = operand_value( p.rhs, columns, row );
  if ( a.index() != b.index() )
    throw domain_error( "type mismatch in comparison " + to_string( a ) + " " + to_string( p.op ) + " " + to_string( b ) );
  switch ( p.op )
  {
  case compare_op::eq: return a == b;
  case compare_op::ne: return a != b;
  case compare_op::lt: return a < b;
  case compare_op::le: return a <= b;
  case compare_op::gt: return a > b;
  case compare_op::ge: return a >= b;
  }
  return false;
}

inline table evaluate_table( annotated_database const& db, query const& q )
{
  switch ( q.type )
  {
  case query::kind::scan:
  {
    auto const& rel = db.get( q.relation );
    table t;
    for ( auto const& c : rel.columns )
      t.columns.push_back( q.alias + "." + c );
    for ( auto const& tup : rel.tuples )
      t.merge( tup.values, monotone_dnf::single( db.universe(), tup.annotation ) );
    return t;
  }
  case query::kind::select:
  {
    auto in = evaluate_table( db, q.inputs.at( 0 ) );
    table t{ in.columns, {} };
    for ( auto& [row, ann] : in.rows )
    {
      bool keep = true;
      for ( auto const& p : q.predicates )
        if ( !holds( p, in.columns, row ) )
        {
          keep = false;
          break;
        }
      if ( keep )
        t.rows.emplace( row, std::move( ann ) );
    }
    return t;
  }
  case query::kind::project:
  {
    auto in = evaluate_table( db, q.inputs.at( 0 ) );
    std::vector<std::size_t> idx;
    table t;
    for ( auto const& c : q.columns )
    {
      idx.push_back( resolve_column( in.columns, c ) );
      t.columns.push_back( in.columns[idx.back()] );
    }
    for ( auto const& [row, ann] : in.rows )
    {
      std::vector<value> key;
      for ( auto i : idx )
        key.push_back( row[i] );
      t.merge( std::move( key ), ann );
    }
    return t;
  }
  case query::kind::join:
  {
    auto const left = evaluate_table( db, q.inputs.at( 0 ) );
    auto const right = evaluate_table( db, q.inputs.at( 1 ) );
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for ( auto const& [l, r] : q.on )
      pairs.emplace_back( resolve_column( left.columns, l ), resolve_column( right.columns, r ) );
    table t;
    t.columns = left.columns;
    t.columns.insert( t.columns.end(), right.columns.begin(), right.columns.end() );
    for ( auto const& [lrow, lann] : left.rows )
      for ( auto const& [rrow, rann] : right.rows )
      {
        bool match = true;
        for ( auto [i, j] : pairs )
        {
          if ( lrow[i].index() != rrow[j].index() )
            throw domain_error( "type mismatch in join condition" );
          if ( lrow[i] != rrow[j] )
          {
            match = false;
            break;
          }
        }
        if ( !match )
          continue;
        auto row = lrow;
        row.insert( row.end(), rrow.begin(), rrow.end() );
        t.merge( std::move( row ), lann & rann );
      }
    return t;
  }
  case query::kind::union_:
  {
    table t = evaluate_table( db, q.inputs.at( 0 ) );
    for ( std::size_t i = 1; i < q.inputs.size(); ++i )
    {
      auto const next = evaluate_table( db, q.inputs[i] );
      if ( next.columns.size() != t.columns.size() )
        throw domain_error( "union inputs have different arities" );
      for ( auto const& [row, ann] : next.rows )
        t.merge( row, ann );
    }
    return t;
  }
  }
  return {};
}

} // namespace detail

inline provenanced_result eval_query( annotated_database const& db, query const& q )
{
  auto t = detail::evaluate_table( db, q );
  provenanced_result r;
  r.columns = std::move( t.columns );
  for ( auto& [row, ann] : t.rows )
    r.rows.push_back( { row, std::move( ann ) } );
  return r;
}

/// Largest term over all row annotations.
inline std::size_t max_term_size( provenanced_result const& r )
{
  std::size_t k = 0;
  for ( auto const& row : r.rows )
    k = std::max( k, row.annotation.max_term_size() );
  return k;
}

/// Rows with annotations printed in the expression grammar.
inline nlohmann::json to_json( provenanced_result const& r )
{
  nlohmann::json rows = nlohmann::json::array();
  for ( auto const& row : r.rows )
  {
    nlohmann::json vals = nlohmann::json::array();
    for ( auto const& v : row.values )
      vals.push_back( value_to_json( v ) );
    nlohmann::json terms = nlohmann::json::array();
    for ( auto const& t : row.annotation.terms() )
    {
      nlohmann::json names = nlohmann::json::array();
      for ( auto v : t )
        names.push_back( row.annotation.universe().name( v ) );
      terms.push_back( names );
    }
    rows.push_back( { { "values", vals }, { "annotation", to_string( row.annotation ) }, { "terms", terms } } );
  }
  return { { "columns", r.columns }, { "rows", rows } };
}

/*! \brief Database and fixed join query whose single answer has provenance `d`.

  R holds one unary tuple per variable x, annotated x. S holds one k-ary tuple
  per term, padded by repeating the term's first variable and annotated by
  that first variable. The query joins S.c_i = R_i.v for i = 1..k and projects
  on no column.
*/
inline std::pair<annotated_database, query> dnf_to_database( monotone_dnf const& d, std::size_t k )
{
  if ( k == 0 )
    throw domain_error( "k must be positive" );
  if ( d.is_false() )
    throw domain_error( "empty DNF has no database encoding" );
  if ( d.is_true() )
    throw domain_error( "constant True has no database encoding" );
  if ( d.max_term_size() > k )
    throw domain_error( "term of size " + std::to_string( d.max_term_size() ) + " exceeds k = " + std::to_string( k ) );

  auto const& names = d.universe();
  variable_universe universe;
  relation r{ "R", { "v" }, {} };
  for ( auto v : d.variables() )
    r.tuples.push_back( { { names.name( v ) }, universe.add( names.name( v ) ) } );

  relation s{ "S", {}, {} };
  for ( std::size_t i = 1; i <= k; ++i )
    s.columns.push_back( "c" + std::to_string( i ) );
  for ( auto const& t : d.terms() )
  {
    std::vector<value> vals;
    for ( std::size_t i = 0; i < k; ++i )
      vals.emplace_back( names.name( i < t.size() ? t[i] : t.front() ) );
    s.tuples.push_back( { std::move( vals ), universe.index_of( names.name( t.front() ) ) } );
  }

  query q = query::scan( "S", "s" );
  for ( std::size_t i = 1; i <= k; ++i )
  {
    auto const alias = "r" + std::to_string( i );
    q = query::join( { { "s.c" + std::to_string( i ), alias + ".v" } }, std::move( q ), query::scan( "R", alias ) );
  }
  q = query::project( {}, std::move( q ) );
  return { annotated_database( std::move( universe ), { std::move( r ), std::move( s ) } ), std::move( q ) };
}

} // namespace probedepth
