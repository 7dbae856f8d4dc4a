/*!
  \file graphdnf.hpp
  \brief Monotone graph 2-DNFs and polynomial-time evasiveness for acyclic ones

  A monotone 2-DNF is read as a graph: one vertex per variable, one edge per
  two-variable term, and a mark on every variable that forms a term on its
  own. For acyclic graphs evasiveness is decided by searching for a
  non-evasiveness pattern: rooted at x, a pattern is a leaf when x has no
  co-occurring variable, and otherwise picks, for every neighbour y of x, a
  grandchild w of y and recursively a pattern rooted at w for the subtree
  below w.
*/

#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "boolexpr.hpp"

namespace probedepth
{

class graph_dnf
{
public:
  using edge = std::pair<var_index, var_index>;

  graph_dnf() = default;

  /// Edges are stored with first < second; self loops are rejected.
  graph_dnf( variable_universe universe, std::set<edge> edges, std::set<var_index> singletons )
      : universe_( std::move( universe ) ), singletons_( std::move( singletons ) )
  {
    for ( auto [a, b] : edges )
    {
      if ( a == b )
        throw domain_error( "graph DNF edge is a self loop" );
      if ( a >= universe_.size() || b >= universe_.size() )
        throw unknown_variable( "graph DNF edge outside the universe" );
      edges_.emplace( std::min( a, b ), std::max( a, b ) );
    }
    for ( auto v : singletons_ )
      if ( v >= universe_.size() )
        throw unknown_variable( "graph DNF singleton outside the universe" );
  }

  variable_universe const& universe() const noexcept { return universe_; }
  std::set<edge> const& edges() const noexcept { return edges_; }
  std::set<var_index> const& singletons() const noexcept { return singletons_; }

  /// Variables occurring in some term, ascending.
  std::vector<var_index> occurring() const
  {
    std::set<var_index> vs( singletons_.begin(), singletons_.end() );
    for ( auto [a, b] : edges_ )
    {
      vs.insert( a );
      vs.insert( b );
    }
    return { vs.begin(), vs.end() };
  }

  /// Sorted neighbour lists indexed by variable.
  std::vector<std::vector<var_index>> adjacency() const
  {
    std::vector<std::vector<var_index>> adj( universe_.size() );
    for ( auto [a, b] : edges_ )
    {
      adj[a].push_back( b );
      adj[b].push_back( a );
    }
    for ( auto& l : adj )
      std::sort( l.begin(), l.end() );
    return adj;
  }

  /// No singleton variable is an endpoint of an edge.
  bool is_preprocessed() const
  {
    return std::none_of( edges_.begin(), edges_.end(), [&]( edge const& e ) {
      return singletons_.count( e.first ) || singletons_.count( e.second );
    } );
  }

  monotone_dnf to_dnf() const
  {
    std::vector<term> terms;
    for ( auto [a, b] : edges_ )
      terms.push_back( { a, b } );
    for ( auto v : singletons_ )
      terms.push_back( { v } );
    return monotone_dnf( universe_, std::move( terms ) );
  }

  friend bool operator==( graph_dnf const& a, graph_dnf const& b )
  {
    return a.universe_ == b.universe_ && a.edges_ == b.edges_ && a.singletons_ == b.singletons_;
  }

private:
  variable_universe universe_;
  std::set<edge> edges_;
  std::set<var_index> singletons_;
};

/*! \brief Graph view of a monotone 2-DNF with subsumed edges removed.

  A singleton term x subsumes every term x&y, so those edges are dropped.
  Throws domain_error on a term with more than two variables or on the
  constant True (the empty term).
*/
inline graph_dnf from_monotone_dnf( monotone_dnf const& d )
{
  std::set<var_index> singletons;
  std::vector<graph_dnf::edge> pairs;
  for ( auto const& t : d.terms() )
  {
    if ( t.empty() )
      throw domain_error( "constant True has no graph DNF form" );
    if ( t.size() > 2 )
      throw domain_error( "term with " + std::to_string( t.size() ) + " variables in a graph DNF" );
    if ( t.size() == 1 )
      singletons.insert( t.front() );
    else
      pairs.emplace_back( t[0], t[1] );
  }
  std::set<graph_dnf::edge> edges;
  for ( auto const& e : pairs )
    if ( !singletons.count( e.first ) && !singletons.count( e.second ) )
      edges.insert( e );
  return graph_dnf( d.universe(), std::move( edges ), std::move( singletons ) );
}

namespace detail
{

struct disjoint_sets
{
  std::vector<std::size_t> parent;
  explicit disjoint_sets( std::size_t n ) : parent( n ) { std::iota( parent.begin(), parent.end(), std::size_t{ 0 } ); }
  std::size_t find( std::size_t x )
  {
    while ( parent[x] != x )
      x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite( std::size_t a, std::size_t b )
  {
    a = find( a );
    b = find( b );
    if ( a == b )
      return false;
    parent[std::max( a, b )] = std::min( a, b );
    return true;
  }
};

} // namespace detail

/// The edge set forms a forest.
inline bool is_acyclic( graph_dnf const& g )
{
  detail::disjoint_sets ds( g.universe().size() );
  for ( auto [a, b] : g.edges() )
    if ( !ds.unite( a, b ) )
      return false;
  return true;
}

struct component_split
{
  /// Edge-connected components; each singleton-term variable alone.
  std::vector<graph_dnf> components;
  /// Universe variables occurring in no term.
  std::vector<var_index> free;
};

/// Components ordered by their smallest variable.
inline component_split components( graph_dnf const& g )
{
  auto const n = g.universe().size();
  detail::disjoint_sets ds( n );
  for ( auto [a, b] : g.edges() )
    ds.unite( a, b );
  std::vector<bool> occurs( n, false );
  for ( auto v : g.occurring() )
    occurs[v] = true;

  component_split out;
  std::vector<int> slot( n, -1 );
  std::vector<std::set<graph_dnf::edge>> edges;
  std::vector<std::set<var_index>> singles;
  for ( var_index v = 0; v < n; ++v )
  {
    if ( !occurs[v] )
    {
      out.free.push_back( v );
      continue;
    }
    auto const r = ds.find( v );
    if ( slot[r] < 0 )
    {
      slot[r] = static_cast<int>( edges.size() );
      edges.emplace_back();
      singles.emplace_back();
    }
    if ( g.singletons().count( v ) )
      singles[slot[r]].insert( v );
  }
  for ( auto const& e : g.edges() )
    edges[slot[ds.find( e.first )]].insert( e );
  for ( std::size_t i = 0; i < edges.size(); ++i )
    out.components.emplace_back( g.universe(), std::move( edges[i] ), std::move( singles[i] ) );
  return out;
}

/* ---------------------------------------------------------------------- */
/* non-evasiveness patterns                                                */
/* ---------------------------------------------------------------------- */

struct pattern
{
  var_index var = 0;
  std::vector<pattern> children;

  std::size_t size() const
  {
    std::size_t s = 1;
    for ( auto const& c : children )
      s += c.size();
    return s;
  }

  /// Every variable labelling a node, preorder.
  std::vector<var_index> labels() const
  {
    std::vector<var_index> out{ var };
    for ( auto const& c : children )
    {
      auto sub = c.labels();
      out.insert( out.end(), sub.begin(), sub.end() );
    }
    return out;
  }
};

/// "w -> z", "x -> (a -> b, c)".
inline std::string to_string( pattern const& p, variable_universe const& universe )
{
  std::string s = universe.name( p.var );
  if ( p.children.empty() )
    return s;
  s += " -> ";
  if ( p.children.size() == 1 )
    return s + to_string( p.children.front(), universe );
  s += "(";
  for ( std::size_t i = 0; i < p.children.size(); ++i )
  {
    if ( i )
      s += ", ";
    s += to_string( p.children[i], universe );
  }
  return s + ")";
}

namespace detail
{

struct rooted_tree
{
  std::vector<int> parent;
  std::vector<std::vector<var_index>> children;
  std::vector<var_index> preorder;
};

inline rooted_tree root_at( std::vector<std::vector<var_index>> const& adj, var_index root )
{
  rooted_tree t;
  t.parent.assign( adj.size(), -1 );
  t.children.assign( adj.size(), {} );
  std::vector<bool> seen( adj.size(), false );
  std::vector<var_index> stack{ root };
  seen[root] = true;
  while ( !stack.empty() )
  {
    auto v = stack.back();
    stack.pop_back();
    t.preorder.push_back( v );
    for ( auto w : adj[v] )
      if ( !seen[w] )
      {
        seen[w] = true;
        t.parent[w] = static_cast<int>( v );
        t.children[v].push_back( w );
        stack.push_back( w );
      }
  }
  return t;
}

/* special(v): a pattern rooted at v exists for the subtree below v */
inline std::vector<bool> special_vertices( rooted_tree const& t, std::set<var_index> const& singletons )
{
  std::vector<bool> special( t.parent.size(), false );
  for ( auto it = t.preorder.rbegin(); it != t.preorder.rend(); ++it )
  {
    auto const v = *it;
    if ( t.children[v].empty() )
    {
      special[v] = !singletons.count( v );
      continue;
    }
    bool ok = true;
    for ( auto y : t.children[v] )
    {
      bool found = false;
      for ( auto z : t.children[y] )
        for ( auto w : t.children[z] )
          found = found || special[w];
      if ( !found )
      {
        ok = false;
        break;
      }
    }
    special[v] = ok;
  }
  return special;
}

inline pattern extract_pattern( rooted_tree const& t, std::vector<bool> const& special, var_index v )
{
  pattern p{ v, {} };
  for ( auto y : t.children[v] )
  {
    std::optional<var_index> pick;
    for ( auto z : t.children[y] )
      for ( auto w : t.children[z] )
        if ( special[w] && ( !pick || w < *pick ) )
          pick = w;
    p.children.push_back( extract_pattern( t, special, *pick ) );
  }
  return p;
}

inline void require_connected_acyclic( graph_dnf const& g )
{
  if ( !is_acyclic( g ) )
    throw domain_error( "graph DNF is not acyclic" );
  auto const split = components( g );
  if ( split.components.size() != 1 )
    throw domain_error( "graph DNF is not connected" );
  if ( !g.is_preprocessed() )
    throw domain_error( "graph DNF has subsumed terms" );
}

} // namespace detail

/// Whether a pattern rooted at `root` exists for the (connected) graph.
inline bool has_pattern_rooted_at( graph_dnf const& g, var_index root )
{
  auto const t = detail::root_at( g.adjacency(), root );
  return detail::special_vertices( t, g.singletons() )[root];
}

/*! \brief First pattern in root order, if any.

  Tries every occurring variable as the root (ascending index) and runs the
  bottom-up special-vertex computation on the tree rooted there. The witness
  picks the smallest qualifying grandchild at each step. Requires a
  connected, acyclic, preprocessed graph.
*/
inline std::optional<pattern> find_pattern( graph_dnf const& g )
{
  detail::require_connected_acyclic( g );
  auto const adj = g.adjacency();
  for ( auto x : g.occurring() )
  {
    auto const t = detail::root_at( adj, x );
    auto const special = detail::special_vertices( t, g.singletons() );
    if ( special[x] )
      return detail::extract_pattern( t, special, x );
  }
  return std::nullopt;
}

/*! \brief Checks `p` against the recursive pattern definition.

  Roots the graph at the pattern's root and verifies, node by node, that a
  leaf has no co-occurring variable and is not a singleton term, and that an
  inner node has exactly one child per neighbour y, labelled with a
  grandchild of y.
*/
inline bool validate_pattern( graph_dnf const& g, pattern const& p )
{
  auto const occ = g.occurring();
  if ( !std::binary_search( occ.begin(), occ.end(), p.var ) )
    return false;
  auto const t = detail::root_at( g.adjacency(), p.var );
  std::function<bool( pattern const& )> check = [&]( pattern const& node ) -> bool {
    auto const& kids = t.children[node.var];
    if ( kids.empty() )
      return node.children.empty() && !g.singletons().count( node.var );
    if ( node.children.size() != kids.size() )
      return false;
    std::set<var_index> covered;
    for ( auto const& c : node.children )
    {
      if ( c.var >= t.parent.size() )
        return false;
      int const z = t.parent[c.var];
      int const y = z < 0 ? -1 : t.parent[z];
      if ( y < 0 || t.parent[y] != static_cast<int>( node.var ) )
        return false;
      if ( !covered.insert( static_cast<var_index>( y ) ).second )
        return false;
      if ( !check( c ) )
        return false;
    }
    return true;
  };
  return check( p );
}

struct acyclic_verdict
{
  bool evasive = false;
  /// Witness from the first component admitting a pattern.
  std::optional<pattern> witness;
  /// A universe variable occurring in no term.
  std::optional<var_index> free_variable;
};

namespace detail
{

inline monotone_dnf over_universe( monotone_dnf const& d, variable_universe const& universe )
{
  if ( d.universe() == universe )
    return d;
  std::vector<term> terms;
  for ( auto const& t : d.terms() )
  {
    term u;
    for ( auto v : t )
      u.push_back( universe.index_of( d.universe().name( v ) ) );
    terms.push_back( std::move( u ) );
  }
  return monotone_dnf( universe, std::move( terms ) );
}

} // namespace detail

/*! \brief Evasiveness of an acyclic monotone 2-DNF over `universe`, with witness.

  A variable occurring in no term makes the formula non-evasive; otherwise it
  is evasive iff no connected component has a pattern. Throws domain_error
  for terms over two variables and for cyclic graphs.
*/
inline acyclic_verdict analyze_acyclic( monotone_dnf const& d, variable_universe const& universe )
{
  acyclic_verdict v;
  if ( universe.empty() )
  {
    v.evasive = true;
    return v;
  }
  auto const dd = detail::over_universe( d, universe );
  if ( dd.is_false() || dd.is_true() )
  {
    v.free_variable = 0;
    return v;
  }
  auto const g = from_monotone_dnf( dd );
  if ( !is_acyclic( g ) )
    throw domain_error( "graph DNF is not acyclic" );
  auto const split = components( g );
  if ( !split.free.empty() )
  {
    v.free_variable = split.free.front();
    return v;
  }
  for ( auto const& c : split.components )
    if ( auto p = find_pattern( c ) )
    {
      v.witness = std::move( p );
      return v;
    }
  v.evasive = true;
  return v;
}

inline bool decide_evasive_acyclic( monotone_dnf const& d, variable_universe const& universe )
{
  return analyze_acyclic( d, universe ).evasive;
}

/// Graphviz: singleton-term nodes double-circled, pattern labels filled.
inline std::string to_dot( graph_dnf const& g, std::optional<pattern> const& highlight = std::nullopt )
{
  std::set<var_index> marked;
  if ( highlight )
    for ( auto v : highlight->labels() )
      marked.insert( v );
  std::ostringstream out;
  out << "graph dnf {\n";
  for ( auto v : g.occurring() )
  {
    out << "  " << g.universe().name( v ) << " [shape=" << ( g.singletons().count( v ) ? "doublecircle" : "circle" );
    if ( marked.count( v ) )
      out << ", style=filled, fillcolor=lightblue";
    out << "];\n";
  }
  for ( auto [a, b] : g.edges() )
    out << "  " << g.universe().name( a ) << " -- " << g.universe().name( b ) << ";\n";
  out << "}\n";
  return out.str();
}

/* ---------------------------------------------------------------------- */
/* labeled trees                                                           */
/* ---------------------------------------------------------------------- */

/// Tree on vertices 0..n-1 encoded by a Pruefer sequence of length n-2.
inline std::vector<graph_dnf::edge> prufer_decode( std::vector<var_index> const& seq )
{
  std::size_t const n = seq.size() + 2;
  std::vector<std::size_t> degree( n, 1 );
  for ( auto v : seq )
    ++degree[v];
  std::vector<graph_dnf::edge> edges;
  std::set<var_index> leaves;
  for ( var_index v = 0; v < n; ++v )
    if ( degree[v] == 1 )
      leaves.insert( v );
  for ( auto v : seq )
  {
    auto const leaf = *leaves.begin();
    leaves.erase( leaves.begin() );
    edges.emplace_back( std::min( leaf, v ), std::max( leaf, v ) );
    if ( --degree[v] == 1 )
      leaves.insert( v );
  }
  auto const a = *leaves.begin();
  auto const b = *std::next( leaves.begin() );
  edges.emplace_back( a, b );
  return edges;
}

/// Calls `fn(edges)` for each of the n^(n-2) labeled trees on n >= 2 vertices.
template<typename Fn>
void foreach_labeled_tree( std::size_t n, Fn&& fn )
{
  if ( n < 2 )
    return;
  std::vector<var_index> seq( n - 2, 0 );
  while ( true )
  {
    fn( prufer_decode( seq ) );
    std::size_t i = 0;
    while ( i < seq.size() && ++seq[i] == n )
      seq[i++] = 0;
    if ( i == seq.size() )
      return;
  }
}

} // namespace probedepth
