/*!
  \file query.hpp
  \brief SPJU query trees and their JSON form

  \verbatim
  {"op": "scan", "relation": R, "alias": a}
  {"op": "select", "pred": [atom, ...], "input": q}
  {"op": "project", "columns": [c, ...], "input": q}
  {"op": "join", "on": [[left_col, right_col], ...], "left": q, "right": q}
  {"op": "union", "inputs": [q, ...]}

  atom    := {"cmp": op, "lhs": operand, "rhs": operand}
           | {"contains_ci": column, "pattern": string}
  op      := "=" | "!=" | "<" | "<=" | ">" | ">="
  operand := {"col": column} | {"lit": value} | {"year": column}
  \endverbatim

  Scans qualify their columns as "alias.column" (alias defaults to the
  relation name). A column reference is either qualified or an unqualified
  name that matches exactly one column.
*/

#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "database.hpp"

namespace probedepth
{

enum class compare_op
{
  eq,
  ne,
  lt,
  le,
  gt,
  ge
};

inline compare_op compare_op_from_string( std::string const& s )
{
  if ( s == "=" || s == "==" )
    return compare_op::eq;
  if ( s == "!=" || s == "<>" || s == "≠" )
    return compare_op::ne;
  if ( s == "<" )
    return compare_op::lt;
  if ( s == "<=" || s == "≤" )
    return compare_op::le;
  if ( s == ">" )
    return compare_op::gt;
  if ( s == ">=" || s == "≥" )
    return compare_op::ge;
  throw domain_error( "unknown comparison operator '" + s + "'" );
}

inline std::string to_string( compare_op op )
{
  switch ( op )
  {
  case compare_op::eq: return "=";
  case compare_op::ne: return "!=";
  case compare_op::lt: return "<";
  case compare_op::le: return "<=";
  case compare_op::gt: return ">";
  case compare_op::ge: return ">=";
  }
  return "?";
}

struct operand
{
  enum class kind
  {
    column,
    literal,
    year
  } type = kind::column;
  std::string column;
  value literal;
};

struct predicate
{
  enum class kind
  {
    compare,
    contains_ci
  } type = kind::compare;
  operand lhs, rhs;
  compare_op op = compare_op::eq;
  std::string column;  /* contains_ci */
  std::string pattern; /* contains_ci */
};

struct query
{
  enum class kind
  {
    scan,
    select,
    project,
    join,
    union_
  } type = kind::scan;

  std::string relation, alias;                      /* scan */
  std::vector<predicate> predicates;                /* select */
  std::vector<std::string> columns;                 /* project */
  std::vector<std::pair<std::string, std::string>> on; /* join */
  std::vector<query> inputs;                        /* select/project: 1, join: 2, union: >= 1 */

  static query scan( std::string relation, std::string alias = {} )
  {
    query q;
    q.type = kind::scan;
    q.alias = alias.empty() ? relation : std::move( alias );
    q.relation = std::move( relation );
    return q;
  }
  static query select( std::vector<predicate> preds, query input )
  {
    query q;
    q.type = kind::select;
    q.predicates = std::move( preds );
    q.inputs.push_back( std::move( input ) );
    return q;
  }
  static query project( std::vector<std::string> columns, query input )
  {
    query q;
    q.type = kind::project;
    q.columns = std::move( columns );
    q.inputs.push_back( std::move( input ) );
    return q;
  }
  static query join( std::vector<std::pair<std::string, std::string>> on, query left, query right )
  {
    query q;
    q.type = kind::join;
    q.on = std::move( on );
    q.inputs.push_back( std::move( left ) );
    q.inputs.push_back( std::move( right ) );
    return q;
  }
  static query union_of( std::vector<query> inputs )
  {
    if ( inputs.empty() )
      throw domain_error( "union needs at least one input" );
    query q;
    q.type = kind::union_;
    q.inputs = std::move( inputs );
    return q;
  }

  /// Operator count along the deepest root-to-scan chain.
  std::size_t height() const
  {
    std::size_t h = 0;
    for ( auto const& c : inputs )
      h = std::max( h, c.height() );
    return h + 1;
  }
};

inline predicate compare( operand lhs, compare_op op, operand rhs )
{
  predicate p;
  p.type = predicate::kind::compare;
  p.lhs = std::move( lhs );
  p.op = op;
  p.rhs = std::move( rhs );
  return p;
}

inline predicate contains_ci( std::string column, std::string pattern )
{
  predicate p;
  p.type = predicate::kind::contains_ci;
  p.column = std::move( column );
  p.pattern = std::move( pattern );
  return p;
}

inline operand col( std::string name ) { return { operand::kind::column, std::move( name ), {} }; }
inline operand lit( value v ) { return { operand::kind::literal, {}, std::move( v ) }; }
inline operand year_of( std::string name ) { return { operand::kind::year, std::move( name ), {} }; }

/* ---------------------------------------------------------------------- */
/* JSON                                                                    */
/* ---------------------------------------------------------------------- */

namespace detail
{

inline operand operand_from_json( nlohmann::json const& j )
{
  if ( j.contains( "col" ) )
    return col( j["col"].get<std::string>() );
  if ( j.contains( "lit" ) )
    return lit( value_from_json( j["lit"] ) );
  if ( j.contains( "year" ) )
    return year_of( j["year"].get<std::string>() );
  throw domain_error( "schema violation: operand must have \"col\", \"lit\" or \"year\": " + j.dump() );
}

inline nlohmann::json operand_to_json( operand const& o )
{
  switch ( o.type )
  {
  case operand::kind::column: return { { "col", o.column } };
  case operand::kind::literal: return { { "lit", value_to_json( o.literal ) } };
  case operand::kind::year: return { { "year", o.column } };
  }
  return {};
}

} // namespace detail

inline query query_from_json( nlohmann::json const& j )
{
  try
  {
    auto const op = j.at( "op" ).get<std::string>();
    if ( op == "scan" )
      return query::scan( j.at( "relation" ).get<std::string>(), j.value( "alias", std::string{} ) );
    if ( op == "select" )
    {
      std::vector<predicate> preds;
      for ( auto const& a : j.at( "pred" ) )
      {
        if ( a.contains( "contains_ci" ) )
          preds.push_back( contains_ci( a["contains_ci"].get<std::string>(), a.at( "pattern" ).get<std::string>() ) );
        else
          preds.push_back( compare( detail::operand_from_json( a.at( "lhs" ) ), compare_op_from_string( a.at( "cmp" ).get<std::string>() ),
                                    detail::operand_from_json( a.at( "rhs" ) ) ) );
      }
      return query::select( std::move( preds ), query_from_json( j.at( "input" ) ) );
    }
    if ( op == "project" )
      return query::project( j.at( "columns" ).get<std::vector<std::string>>(), query_from_json( j.at( "input" ) ) );
    if ( op == "join" )
    {
      std::vector<std::pair<std::string, std::string>> on;
      for ( auto const& p : j.at( "on" ) )
      {
        if ( !p.is_array() || p.size() != 2 )
          throw domain_error( "schema violation: join condition must be a [left, right] pair" );
        on.emplace_back( p[0].get<std::string>(), p[1].get<std::string>() );
      }
      return query::join( std::move( on ), query_from_json( j.at( "left" ) ), query_from_json( j.at( "right" ) ) );
    }
    if ( op == "union" )
    {
      std::vector<query> inputs;
      for ( auto const& c : j.at( "inputs" ) )
        inputs.push_back( query_from_json( c ) );
      return query::union_of( std::move( inputs ) );
    }
    throw domain_error( "schema violation: unknown query op '" + op + "'" );
  }
  catch ( nlohmann::json::exception const& e )
  {
    throw domain_error( std::string( "schema violation: " ) + e.what() );
  }
}

inline nlohmann::json to_json( query const& q )
{
  switch ( q.type )
  {
  case query::kind::scan:
    return { { "op", "scan" }, { "relation", q.relation }, { "alias", q.alias } };
  case query::kind::select:
  {
    nlohmann::json preds = nlohmann::json::array();
    for ( auto const& p : q.predicates )
    {
      if ( p.type == predicate::kind::contains_ci )
        preds.push_back( { { "contains_ci", p.column }, { "pattern", p.pattern } } );
      else
        preds.push_back( { { "cmp", to_string( p.op ) }, { "lhs", detail::operand_to_json( p.lhs ) }, { "rhs", detail::operand_to_json( p.rhs ) } } );
    }
    return { { "op", "select" }, { "pred", preds }, { "input", to_json( q.inputs[0] ) } };
  }
  case query::kind::project:
    return { { "op", "project" }, { "columns", q.columns }, { "input", to_json( q.inputs[0] ) } };
  case query::kind::join:
  {
    nlohmann::json on = nlohmann::json::array();
    for ( auto const& [l, r] : q.on )
      on.push_back( { l, r } );
    return { { "op", "join" }, { "on", on }, { "left", to_json( q.inputs[0] ) }, { "right", to_json( q.inputs[1] ) } };
  }
  case query::kind::union_:
  {
    nlohmann::json inputs = nlohmann::json::array();
    for ( auto const& c : q.inputs )
      inputs.push_back( to_json( c ) );
    return { { "op", "union" }, { "inputs", inputs } };
  }
  }
  return {};
}

} // namespace probedepth
