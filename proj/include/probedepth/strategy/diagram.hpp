/*!
  \file diagram.hpp
  \brief Decision diagrams encoding probing strategies

  A diagram is a rooted DAG whose inner nodes probe a variable and branch on
  its answer, and whose leaves give the constant value of every member of the
  expression set the diagram was built for.
*/

#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "../boolexpr.hpp"

namespace probedepth
{

struct probe_node
{
  var_index var;
  std::size_t on_true;
  std::size_t on_false;
};

struct leaf_node
{
  std::vector<bool> labels;
};

using diagram_node = std::variant<probe_node, leaf_node>;

class decision_diagram
{
public:
  decision_diagram() = default;
  decision_diagram( variable_universe universe, std::size_t member_count )
      : universe_( std::move( universe ) ), member_count_( member_count )
  {
  }

  std::size_t add_leaf( std::vector<bool> labels )
  {
    if ( labels.size() != member_count_ )
      throw domain_error( "leaf label count does not match the member count" );
    nodes_.emplace_back( leaf_node{ std::move( labels ) } );
    return nodes_.size() - 1;
  }

  std::size_t add_probe( var_index var, std::size_t on_true, std::size_t on_false )
  {
    if ( var >= universe_.size() )
      throw unknown_variable( "probe of a variable outside the universe" );
    nodes_.emplace_back( probe_node{ var, on_true, on_false } );
    return nodes_.size() - 1;
  }

  void set_root( std::size_t root ) { root_ = root; }

  std::size_t root() const noexcept { return root_; }
  std::vector<diagram_node> const& nodes() const noexcept { return nodes_; }
  diagram_node const& node( std::size_t i ) const { return nodes_.at( i ); }
  variable_universe const& universe() const noexcept { return universe_; }
  std::size_t member_count() const noexcept { return member_count_; }

  bool is_leaf( std::size_t i ) const { return std::holds_alternative<leaf_node>( nodes_.at( i ) ); }

private:
  variable_universe universe_;
  std::size_t member_count_ = 0;
  std::vector<diagram_node> nodes_;
  std::size_t root_ = 0;
};

namespace detail
{

/* topological order of nodes reachable from the root (root first); throws on
   dangling indices and cycles */
inline std::vector<std::size_t> reachable_topological( decision_diagram const& d )
{
  auto const& nodes = d.nodes();
  if ( d.root() >= nodes.size() )
    throw domain_error( "malformed diagram: root index out of range" );
  enum class mark : unsigned char { none, active, done };
  std::vector<mark> marks( nodes.size(), mark::none );
  std::vector<std::size_t> post;
  /* iterative DFS: (node, next child slot) */
  std::vector<std::pair<std::size_t, int>> stack{ { d.root(), 0 } };
  marks[d.root()] = mark::active;
  while ( !stack.empty() )
  {
    auto& [v, slot] = stack.back();
    auto const* p = std::get_if<probe_node>( &nodes[v] );
    if ( !p || slot == 2 )
    {
      marks[v] = mark::done;
      post.push_back( v );
      stack.pop_back();
      continue;
    }
    std::size_t const child = slot == 0 ? p->on_true : p->on_false;
    ++slot;
    if ( child >= nodes.size() )
      throw domain_error( "malformed diagram: dangling child index " + std::to_string( child ) );
    if ( marks[child] == mark::active )
      throw domain_error( "malformed diagram: cycle through node " + std::to_string( child ) );
    if ( marks[child] == mark::none )
    {
      marks[child] = mark::active;
      stack.emplace_back( child, 0 );
    }
  }
  std::reverse( post.begin(), post.end() );
  return post;
}

} // namespace detail

/*! \brief Longest root-to-leaf edge count; 0 for a single leaf.

  Throws domain_error on cycles or dangling child indices.
*/
inline std::size_t diagram_depth( decision_diagram const& d )
{
  auto const order = detail::reachable_topological( d );
  std::vector<std::size_t> height( d.nodes().size(), 0 );
  for ( auto it = order.rbegin(); it != order.rend(); ++it )
    if ( auto const* p = std::get_if<probe_node>( &d.node( *it ) ) )
      height[*it] = 1 + std::max( height[p->on_true], height[p->on_false] );
  return height[d.root()];
}

/*! \brief Structural well-formedness.

  Checks acyclicity, index ranges, that every node is reachable from the
  root, and that no variable is probed twice on a root-to-leaf path.
  Returns an error description, or nullopt when the diagram is well formed.
*/
inline std::optional<std::string> validate_structure( decision_diagram const& d )
{
  std::vector<std::size_t> order;
  try
  {
    order = detail::reachable_topological( d );
  }
  catch ( domain_error const& e )
  {
    return std::string( e.what() );
  }
  if ( order.size() != d.nodes().size() )
    return std::string( "diagram has nodes unreachable from the root" );

  /* variables probed on some path from the root down to each node */
  auto const n = d.universe().size();
  std::vector<std::vector<bool>> above( d.nodes().size(), std::vector<bool>( n, false ) );
  for ( auto v : order )
  {
    auto const* p = std::get_if<probe_node>( &d.node( v ) );
    if ( !p )
      continue;
    if ( above[v][p->var] )
      return "variable '" + d.universe().name( p->var ) + "' probed twice on a path";
    for ( auto child : { p->on_true, p->on_false } )
    {
      for ( std::size_t i = 0; i < n; ++i )
        if ( above[v][i] )
          above[child][i] = true;
      above[child][p->var] = true;
    }
  }
  return std::nullopt;
}

/// Leaf reached by following a full valuation from the root.
inline leaf_node const& follow( decision_diagram const& d, valuation const& v )
{
  std::size_t cur = d.root();
  std::size_t steps = 0;
  while ( auto const* p = std::get_if<probe_node>( &d.node( cur ) ) )
  {
    cur = v[p->var] ? p->on_true : p->on_false;
    if ( ++steps > d.nodes().size() )
      throw domain_error( "malformed diagram: cycle while following a valuation" );
  }
  return std::get<leaf_node>( d.node( cur ) );
}

/// True iff following `v` yields the labels evaluate(member_i, v).
inline bool labels_correct( decision_diagram const& d, expression_set const& s, valuation const& v )
{
  auto const& leaf = follow( d, v );
  for ( std::size_t i = 0; i < s.size(); ++i )
    if ( leaf.labels.at( i ) != evaluate( s[i], v ) )
      return false;
  return true;
}

/*! \brief Exhaustive label soundness over all 2^n valuations.

  Returns the first failing valuation (as little-endian bits), or nullopt.
*/
inline std::optional<std::uint64_t> find_label_error( decision_diagram const& d, expression_set const& s )
{
  auto const n = s.num_vars();
  if ( n > 26 )
    throw capacity_exceeded( "exhaustive soundness check over more than 26 variables" );
  for ( std::uint64_t bits = 0; bits < ( std::uint64_t{ 1 } << n ); ++bits )
    if ( !labels_correct( d, s, valuation::from_bits( n, bits ) ) )
      return bits;
  return std::nullopt;
}

/* ---------------------------------------------------------------------- */
/* export                                                                  */
/* ---------------------------------------------------------------------- */

inline std::string label_vector_string( std::vector<bool> const& labels )
{
  std::string s = "(";
  for ( std::size_t i = 0; i < labels.size(); ++i )
  {
    if ( i )
      s += ", ";
    s += labels[i] ? "True" : "False";
  }
  return s + ")";
}

/// Graphviz rendering: solid edge = True, dashed edge = False.
inline std::string to_dot( decision_diagram const& d )
{
  std::ostringstream out;
  out << "digraph strategy {\n";
  for ( std::size_t i = 0; i < d.nodes().size(); ++i )
  {
    if ( auto const* p = std::get_if<probe_node>( &d.node( i ) ) )
      out << "  n" << i << " [shape=circle, label=\"" << d.universe().name( p->var ) << "\"];\n";
    else
      out << "  n" << i << " [shape=box, label=\"" << label_vector_string( std::get<leaf_node>( d.node( i ) ).labels )
          << "\"];\n";
  }
  for ( std::size_t i = 0; i < d.nodes().size(); ++i )
    if ( auto const* p = std::get_if<probe_node>( &d.node( i ) ) )
    {
      out << "  n" << i << " -> n" << p->on_true << " [style=solid];\n";
      out << "  n" << i << " -> n" << p->on_false << " [style=dashed];\n";
    }
  out << "  root = n" << d.root() << ";\n";
  out << "}\n";
  return out.str();
}

/*! \brief JSON form (see schemas/diagram.schema.json)

  \verbatim
  {"variables": [...], "members": m, "root": r, "depth": k,
   "nodes": [{"id": 0, "kind": "probe", "var": "x", "true": 1, "false": 2},
             {"id": 1, "kind": "leaf", "labels": [true, false]}, ...]}
  \endverbatim
*/
inline nlohmann::json to_json( decision_diagram const& d )
{
  nlohmann::json nodes = nlohmann::json::array();
  for ( std::size_t i = 0; i < d.nodes().size(); ++i )
  {
    if ( auto const* p = std::get_if<probe_node>( &d.node( i ) ) )
      nodes.push_back( { { "id", i }, { "kind", "probe" }, { "var", d.universe().name( p->var ) }, { "true", p->on_true }, { "false", p->on_false } } );
    else
    {
      auto const& labels = std::get<leaf_node>( d.node( i ) ).labels;
      nodes.push_back( { { "id", i }, { "kind", "leaf" }, { "labels", std::vector<bool>( labels.begin(), labels.end() ) } } );
    }
  }
  return { { "variables", d.universe().names() },
           { "members", d.member_count() },
           { "root", d.root() },
           { "depth", diagram_depth( d ) },
           { "nodes", std::move( nodes ) } };
}

/// Inverse of to_json; the result is not validated beyond index types.
inline decision_diagram diagram_from_json( nlohmann::json const& j )
{
  decision_diagram d( variable_universe( j.at( "variables" ).get<std::vector<std::string>>() ), j.at( "members" ).get<std::size_t>() );
  for ( auto const& n : j.at( "nodes" ) )
  {
    if ( n.at( "kind" ) == "probe" )
      d.add_probe( d.universe().index_of( n.at( "var" ).get<std::string>() ), n.at( "true" ).get<std::size_t>(), n.at( "false" ).get<std::size_t>() );
    else
      d.add_leaf( n.at( "labels" ).get<std::vector<bool>>() );
  }
  d.set_root( j.at( "root" ).get<std::size_t>() );
  return d;
}

} // namespace probedepth
