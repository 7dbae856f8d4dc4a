/*!
  \file session.hpp
  \brief Executing a strategy against a source of probe answers
*/

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "diagram.hpp"

namespace probedepth
{

/// Returns the answer for a probed variable, or nullopt when none is available.
using answer_source = std::function<std::optional<bool>( var_index, std::string const& )>;

struct transcript
{
  std::vector<std::pair<var_index, bool>> probes;
  std::vector<bool> labels;

  std::size_t probe_count() const noexcept { return probes.size(); }
};

/// Walks `d` from the root, asking `answers` at every probe node.
inline transcript run_session( decision_diagram const& d, answer_source const& answers )
{
  transcript out;
  std::size_t cur = d.root();
  while ( auto const* p = std::get_if<probe_node>( &d.node( cur ) ) )
  {
    if ( out.probes.size() >= d.universe().size() )
      throw domain_error( "malformed diagram: more probes than variables" );
    auto const& name = d.universe().name( p->var );
    auto const answer = answers( p->var, name );
    if ( !answer )
      throw domain_error( "no answer available for variable '" + name + "'" );
    out.probes.emplace_back( p->var, *answer );
    cur = *answer ? p->on_true : p->on_false;
  }
  out.labels = std::get<leaf_node>( d.node( cur ) ).labels;
  return out;
}

/// Answer source backed by a full valuation.
inline answer_source answers_from( valuation v )
{
  return [v = std::move( v )]( var_index x, std::string const& ) -> std::optional<bool> { return v[x]; };
}

} // namespace probedepth
