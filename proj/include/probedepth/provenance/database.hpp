/*!
  \file database.hpp
  \brief Annotated relational databases: every tuple carries one variable

  \verbatim
  {"relations": [{"name": "R", "columns": ["A", "B"],
                  "tuples": [{"values": [1, "x"], "annotation": "r0"}, ...]}, ...]}
  \endverbatim

  Values are integers or strings; dates are ISO-8601 strings. The universe is
  the set of annotation variables in order of first appearance. The labeling
  need not be injective.
*/

#pragma once

#include <cstdint>
#include <istream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "../boolexpr.hpp"

namespace probedepth
{

using value = std::variant<std::int64_t, std::string>;

inline std::string to_string( value const& v )
{
  if ( auto const* i = std::get_if<std::int64_t>( &v ) )
    return std::to_string( *i );
  return std::get<std::string>( v );
}

inline nlohmann::json value_to_json( value const& v )
{
  if ( auto const* i = std::get_if<std::int64_t>( &v ) )
    return *i;
  return std::get<std::string>( v );
}

inline value value_from_json( nlohmann::json const& j )
{
  if ( j.is_number_integer() )
    return j.get<std::int64_t>();
  if ( j.is_string() )
    return j.get<std::string>();
  throw domain_error( "schema violation: values must be integers or strings, got " + j.dump() );
}

struct annotated_tuple
{
  std::vector<value> values;
  var_index annotation;
};

struct relation
{
  std::string name;
  std::vector<std::string> columns;
  std::vector<annotated_tuple> tuples;
};

class annotated_database
{
public:
  annotated_database() = default;
  annotated_database( variable_universe universe, std::vector<relation> relations )
      : universe_( std::move( universe ) ), relations_( std::move( relations ) )
  {
    for ( auto const& r : relations_ )
      for ( auto const& t : r.tuples )
      {
        if ( t.values.size() != r.columns.size() )
          throw domain_error( "relation '" + r.name + "': tuple arity " + std::to_string( t.values.size() ) +
                              " does not match " + std::to_string( r.columns.size() ) + " columns" );
        if ( t.annotation >= universe_.size() )
          throw unknown_variable( "relation '" + r.name + "': annotation outside the universe" );
      }
  }

  variable_universe const& universe() const noexcept { return universe_; }
  std::vector<relation> const& relations() const noexcept { return relations_; }

  relation const& get( std::string const& name ) const
  {
    for ( auto const& r : relations_ )
      if ( r.name == name )
        return r;
    throw domain_error( "unknown relation '" + name + "'" );
  }

  std::size_t tuple_count() const
  {
    std::size_t n = 0;
    for ( auto const& r : relations_ )
      n += r.tuples.size();
    return n;
  }

private:
  variable_universe universe_;
  std::vector<relation> relations_;
};

inline annotated_database database_from_json( nlohmann::json const& j )
{
  if ( !j.is_object() || !j.contains( "relations" ) || !j["relations"].is_array() )
    throw domain_error( "schema violation: expected an object with a \"relations\" array" );
  variable_universe universe;
  std::vector<relation> relations;
  for ( auto const& jr : j["relations"] )
  {
    relation r;
    try
    {
      r.name = jr.at( "name" ).get<std::string>();
      r.columns = jr.at( "columns" ).get<std::vector<std::string>>();
      for ( auto const& jt : jr.value( "tuples", nlohmann::json::array() ) )
      {
        annotated_tuple t;
        for ( auto const& jv : jt.at( "values" ) )
          t.values.push_back( value_from_json( jv ) );
        t.annotation = universe.intern( jt.at( "annotation" ).get<std::string>() );
        r.tuples.push_back( std::move( t ) );
      }
    }
    catch ( nlohmann::json::exception const& e )
    {
      throw domain_error( std::string( "schema violation: " ) + e.what() );
    }
    relations.push_back( std::move( r ) );
  }
  return annotated_database( std::move( universe ), std::move( relations ) );
}

inline annotated_database load_database( std::istream& in )
{
  nlohmann::json j;
  try
  {
    in >> j;
  }
  catch ( nlohmann::json::parse_error const& e )
  {
    throw domain_error( std::string( "database is not valid JSON: " ) + e.what() );
  }
  return database_from_json( j );
}

inline annotated_database load_database( std::string const& text )
{
  std::istringstream in( text );
  return load_database( in );
}

inline nlohmann::json to_json( annotated_database const& db )
{
  nlohmann::json rels = nlohmann::json::array();
  for ( auto const& r : db.relations() )
  {
    nlohmann::json tuples = nlohmann::json::array();
    for ( auto const& t : r.tuples )
    {
      nlohmann::json vals = nlohmann::json::array();
      for ( auto const& v : t.values )
        vals.push_back( value_to_json( v ) );
      tuples.push_back( { { "values", vals }, { "annotation", db.universe().name( t.annotation ) } } );
    }
    rels.push_back( { { "name", r.name }, { "columns", r.columns }, { "tuples", tuples } } );
  }
  return { { "relations", rels } };
}

/// D_val: keeps exactly the tuples whose annotation is true under `v`.
inline annotated_database possible_world( annotated_database const& db, valuation const& v )
{
  if ( v.size() != db.universe().size() )
    throw domain_error( "valuation does not cover the database universe" );
  std::vector<relation> kept;
  for ( auto const& r : db.relations() )
  {
    relation out{ r.name, r.columns, {} };
    for ( auto const& t : r.tuples )
      if ( v[t.annotation] )
        out.tuples.push_back( t );
    kept.push_back( std::move( out ) );
  }
  return annotated_database( db.universe(), std::move( kept ) );
}

} // namespace probedepth
