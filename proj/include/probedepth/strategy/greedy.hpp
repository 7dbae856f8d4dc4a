/*!
  \file greedy.hpp
  \brief Greedy probing heuristic working directly on expressions

  Needs no truth tables, so it applies to universes beyond the exact-search
  cap. At each node it probes the variable whose worse branch leaves the
  fewest variables occurring in non-constant members.
*/

#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "../boolexpr.hpp"
#include "diagram.hpp"

namespace probedepth
{

namespace detail
{

inline std::set<var_index> live_variables( std::vector<expression> const& members )
{
  std::set<var_index> vars;
  for ( auto const& m : members )
    if ( !m.is_constant() )
      foreach_variable_occurrence( m, [&]( var_index v ) { vars.insert( v ); } );
  return vars;
}

inline std::vector<expression> restrict_all( std::vector<expression> const& members, var_index x, bool b )
{
  std::vector<expression> out;
  out.reserve( members.size() );
  for ( auto const& m : members )
    out.push_back( restrict( m, x, b ) );
  return out;
}

class greedy_builder
{
public:
  greedy_builder( expression_set const& s ) : set_( s ), diagram_( s.universe(), s.size() ) {}

  decision_diagram run()
  {
    std::vector<expression> start;
    for ( auto const& m : set_.members() )
      start.push_back( simplify( m ) );
    diagram_.set_root( build( start ) );
    return std::move( diagram_ );
  }

private:
  std::size_t build( std::vector<expression> const& members )
  {
    std::string key;
    for ( auto const& m : members )
      key += to_string( m, set_.universe() ) + ';';
    if ( auto it = made_.find( key ); it != made_.end() )
      return it->second;

    auto const live = live_variables( members );
    std::size_t id;
    if ( live.empty() )
    {
      /* every member simplified to a constant */
      std::vector<bool> labels;
      for ( auto const& m : members )
        labels.push_back( m.value() );
      id = diagram_.add_leaf( std::move( labels ) );
    }
    else
    {
      var_index best = *live.begin();
      std::size_t best_score = static_cast<std::size_t>( -1 );
      for ( auto x : live )
      {
        std::size_t score = 0;
        for ( bool b : { true, false } )
          score = std::max( score, live_variables( restrict_all( members, x, b ) ).size() );
        if ( score < best_score )
        {
          best_score = score;
          best = x;
        }
      }
      auto const t = build( restrict_all( members, best, true ) );
      auto const f = build( restrict_all( members, best, false ) );
      id = diagram_.add_probe( best, t, f );
    }
    made_.emplace( std::move( key ), id );
    return id;
  }

  expression_set const& set_;
  decision_diagram diagram_;
  std::unordered_map<std::string, std::size_t> made_;
};

} // namespace detail

/// Greedy strategy; ties go to the lowest universe index.
inline decision_diagram greedy_strategy( expression_set const& s )
{
  return detail::greedy_builder( s ).run();
}

} // namespace probedepth
