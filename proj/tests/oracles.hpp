// Independent reference implementations and random generators used by the tests.
// Nothing here calls the search, truth-table or evaluation code under test
// except where a test explicitly compares the two.

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <probedepth/boolexpr.hpp>
#include <probedepth/provenance.hpp>
#include <probedepth/strategy/diagram.hpp>

namespace oracle
{

using namespace probedepth;

// Full truth table over all universe variables, bit i = value under valuation i.
inline std::vector<bool> brute_table( expression const& e, std::size_t n )
{
  std::vector<bool> t( std::size_t{ 1 } << n );
  for ( std::uint64_t i = 0; i < t.size(); ++i )
    t[i] = evaluate( e, valuation::from_bits( n, i ) );
  return t;
}

inline std::vector<std::vector<bool>> brute_tables( expression_set const& s )
{
  std::vector<std::vector<bool>> out;
  for ( auto const& m : s.members() )
    out.push_back( brute_table( m, s.num_vars() ) );
  return out;
}

// Value of table `t` if it is constant on the sub-cube {i : (i & mask) == fixed}.
inline std::optional<bool> constant_on( std::vector<bool> const& t, std::uint64_t mask, std::uint64_t fixed )
{
  std::optional<bool> seen;
  for ( std::uint64_t i = 0; i < t.size(); ++i )
    if ( ( i & mask ) == fixed )
    {
      if ( !seen )
        seen = t[i];
      else if ( *seen != t[i] )
        return std::nullopt;
    }
  return seen;
}

// Textbook minimax over partial assignments, no memo, no pruning.
inline int naive_depth( std::vector<std::vector<bool>> const& tables, std::size_t n, std::uint64_t mask = 0, std::uint64_t fixed = 0 )
{
  bool done = true;
  for ( auto const& t : tables )
    if ( !constant_on( t, mask, fixed ) )
    {
      done = false;
      break;
    }
  if ( done )
    return 0;
  int best = static_cast<int>( n ) + 1;
  for ( std::size_t x = 0; x < n; ++x )
  {
    std::uint64_t const bit = std::uint64_t{ 1 } << x;
    if ( mask & bit )
      continue;
    int const a = naive_depth( tables, n, mask | bit, fixed | bit );
    int const b = naive_depth( tables, n, mask | bit, fixed );
    best = std::min( best, 1 + std::max( a, b ) );
  }
  return best;
}

// Same recursion, memoized on the partial assignment only (no canonicalization).
inline int assignment_memo_depth( std::vector<std::vector<bool>> const& tables, std::size_t n )
{
  std::map<std::pair<std::uint64_t, std::uint64_t>, int> memo;
  std::function<int( std::uint64_t, std::uint64_t )> go = [&]( std::uint64_t mask, std::uint64_t fixed ) {
    if ( auto it = memo.find( { mask, fixed } ); it != memo.end() )
      return it->second;
    bool done = true;
    for ( auto const& t : tables )
      if ( !constant_on( t, mask, fixed ) )
      {
        done = false;
        break;
      }
    int best = 0;
    if ( !done )
    {
      best = static_cast<int>( n ) + 1;
      for ( std::size_t x = 0; x < n; ++x )
      {
        std::uint64_t const bit = std::uint64_t{ 1 } << x;
        if ( mask & bit )
          continue;
        best = std::min( best, 1 + std::max( go( mask | bit, fixed | bit ), go( mask | bit, fixed ) ) );
      }
    }
    memo[{ mask, fixed }] = best;
    return best;
  };
  return go( 0, 0 );
}

inline int reference_depth( expression_set const& s )
{
  auto const tables = brute_tables( s );
  return s.num_vars() <= 6 ? naive_depth( tables, s.num_vars() ) : assignment_memo_depth( tables, s.num_vars() );
}

// Path following for a diagram without using diagram helpers.
inline std::vector<bool> walk( decision_diagram const& d, valuation const& v )
{
  std::size_t cur = d.root();
  while ( auto const* p = std::get_if<probe_node>( &d.node( cur ) ) )
    cur = v[p->var] ? p->on_true : p->on_false;
  return std::get<leaf_node>( d.node( cur ) ).labels;
}

inline bool sound_on( decision_diagram const& d, expression_set const& s, valuation const& v )
{
  auto const labels = walk( d, v );
  for ( std::size_t i = 0; i < s.size(); ++i )
    if ( labels[i] != evaluate( s[i], v ) )
      return false;
  return true;
}

inline bool sound_everywhere( decision_diagram const& d, expression_set const& s )
{
  for ( std::uint64_t i = 0; i < ( std::uint64_t{ 1 } << s.num_vars() ); ++i )
    if ( !sound_on( d, s, valuation::from_bits( s.num_vars(), i ) ) )
      return false;
  return true;
}

inline std::uint64_t count_ones( std::vector<bool> const& t )
{
  return static_cast<std::uint64_t>( std::count( t.begin(), t.end(), true ) );
}

/* ---------------------------------------------------------------------- */
/* random expressions                                                      */
/* ---------------------------------------------------------------------- */

inline variable_universe universe_of( std::size_t n, std::string const& prefix = "v" )
{
  variable_universe u;
  for ( std::size_t i = 0; i < n; ++i )
    u.add( prefix + std::to_string( i ) );
  return u;
}

inline expression random_expression( std::mt19937_64& rng, std::size_t n, int depth, bool negations = true, bool constants = true )
{
  std::uniform_int_distribution<int> pick( 0, 9 );
  int const r = pick( rng );
  if ( depth <= 0 || r < 3 )
  {
    if ( constants && r == 0 && depth > 0 )
      return expression::constant( std::bernoulli_distribution( 0.5 )( rng ) );
    return expression::variable( static_cast<var_index>( std::uniform_int_distribution<std::size_t>( 0, n - 1 )( rng ) ) );
  }
  if ( negations && r == 3 )
    return expression::negation( random_expression( rng, n, depth - 1, negations, constants ) );
  std::vector<expression> kids;
  int const k = std::uniform_int_distribution<int>( 2, 3 )( rng );
  for ( int i = 0; i < k; ++i )
    kids.push_back( random_expression( rng, n, depth - 1, negations, constants ) );
  return r % 2 ? expression::conjunction( std::move( kids ) ) : expression::disjunction( std::move( kids ) );
}

// Read-once, constant-free expression over exactly the given variables.
inline expression random_read_once( std::mt19937_64& rng, std::vector<var_index> vars, bool negations = true )
{
  std::shuffle( vars.begin(), vars.end(), rng );
  std::function<expression( std::size_t, std::size_t )> build = [&]( std::size_t lo, std::size_t hi ) -> expression {
    expression e = expression::variable( vars[lo] );
    if ( hi - lo > 1 )
    {
      std::size_t const parts = std::min<std::size_t>( hi - lo, std::uniform_int_distribution<std::size_t>( 2, 3 )( rng ) );
      std::vector<std::size_t> cuts{ lo, hi };
      std::vector<std::size_t> inner;
      for ( std::size_t i = lo + 1; i < hi; ++i )
        inner.push_back( i );
      std::shuffle( inner.begin(), inner.end(), rng );
      cuts.insert( cuts.end(), inner.begin(), inner.begin() + static_cast<std::ptrdiff_t>( parts - 1 ) );
      std::sort( cuts.begin(), cuts.end() );
      std::vector<expression> kids;
      for ( std::size_t i = 0; i + 1 < cuts.size(); ++i )
        kids.push_back( build( cuts[i], cuts[i + 1] ) );
      e = std::bernoulli_distribution( 0.5 )( rng ) ? expression::conjunction( std::move( kids ) ) : expression::disjunction( std::move( kids ) );
    }
    if ( negations && std::bernoulli_distribution( 0.2 )( rng ) )
      e = expression::negation( e );
    return e;
  };
  return build( 0, vars.size() );
}

// Overall read-once, non-simplifiable set whose universe equals its support.
inline expression_set random_read_once_set( std::mt19937_64& rng, std::size_t max_vars )
{
  std::size_t const n = std::uniform_int_distribution<std::size_t>( 1, max_vars )( rng );
  std::vector<var_index> vars( n );
  for ( std::size_t i = 0; i < n; ++i )
    vars[i] = static_cast<var_index>( i );
  std::shuffle( vars.begin(), vars.end(), rng );
  std::size_t const members = std::uniform_int_distribution<std::size_t>( 1, std::min<std::size_t>( 3, n ) )( rng );
  std::vector<std::size_t> cuts{ 0, n };
  for ( std::size_t m = 1; m < members; ++m )
    cuts.push_back( m * n / members );
  std::sort( cuts.begin(), cuts.end() );
  std::vector<expression> out;
  for ( std::size_t i = 0; i + 1 < cuts.size(); ++i )
    out.push_back( random_read_once( rng, std::vector<var_index>( vars.begin() + static_cast<std::ptrdiff_t>( cuts[i] ),
                                                                  vars.begin() + static_cast<std::ptrdiff_t>( cuts[i + 1] ) ) ) );
  return expression_set( universe_of( n ), std::move( out ) );
}

// Random 3-CNF (cnf = true) or 3-DNF over n variables with literal negation.
inline expression random_3nf( std::mt19937_64& rng, std::size_t n, std::size_t clauses, bool cnf )
{
  std::uniform_int_distribution<var_index> var( 0, static_cast<var_index>( n - 1 ) );
  std::bernoulli_distribution neg( 0.5 );
  std::vector<expression> outer;
  for ( std::size_t c = 0; c < clauses; ++c )
  {
    std::vector<expression> lits;
    for ( int j = 0; j < 3; ++j )
    {
      auto v = expression::variable( var( rng ) );
      lits.push_back( neg( rng ) ? expression::negation( v ) : v );
    }
    outer.push_back( cnf ? expression::disjunction( std::move( lits ) ) : expression::conjunction( std::move( lits ) ) );
  }
  if ( outer.size() == 1 )
    return outer.front();
  return cnf ? expression::conjunction( std::move( outer ) ) : expression::disjunction( std::move( outer ) );
}

// Random absorbed monotone DNF with terms of size 1..k over n variables.
inline monotone_dnf random_kdnf( std::mt19937_64& rng, variable_universe const& u, std::size_t k )
{
  std::size_t const n = u.size();
  std::size_t const terms = std::uniform_int_distribution<std::size_t>( 1, 6 )( rng );
  std::vector<term> ts;
  for ( std::size_t t = 0; t < terms; ++t )
  {
    std::size_t const size = std::uniform_int_distribution<std::size_t>( 1, k )( rng );
    term tm;
    for ( std::size_t j = 0; j < size; ++j )
      tm.push_back( std::uniform_int_distribution<var_index>( 0, static_cast<var_index>( n - 1 ) )( rng ) );
    ts.push_back( tm );
  }
  return monotone_dnf( u, ts );
}

/* ---------------------------------------------------------------------- */
/* plain relational evaluation (no annotations)                            */
/* ---------------------------------------------------------------------- */

struct plain_table
{
  std::vector<std::string> columns;
  std::set<std::vector<value>> rows;
};

inline std::size_t plain_column( std::vector<std::string> const& cols, std::string const& name )
{
  auto it = std::find( cols.begin(), cols.end(), name );
  if ( it != cols.end() )
    return static_cast<std::size_t>( it - cols.begin() );
  std::size_t hit = cols.size();
  for ( std::size_t i = 0; i < cols.size(); ++i )
    if ( cols[i].size() > name.size() && cols[i].compare( cols[i].size() - name.size(), name.size(), name ) == 0 &&
         cols[i][cols[i].size() - name.size() - 1] == '.' )
      hit = i;
  return hit;
}

inline value plain_operand( operand const& o, plain_table const& t, std::vector<value> const& row )
{
  if ( o.type == operand::kind::literal )
    return o.literal;
  auto const& v = row[plain_column( t.columns, o.column )];
  if ( o.type == operand::kind::column )
    return v;
  return static_cast<std::int64_t>( std::stoll( std::get<std::string>( v ).substr( 0, 4 ) ) );
}

inline bool plain_holds( predicate const& p, plain_table const& t, std::vector<value> const& row )
{
  if ( p.type == predicate::kind::contains_ci )
  {
    auto lower = []( std::string s ) {
      std::transform( s.begin(), s.end(), s.begin(), []( unsigned char c ) { return static_cast<char>( std::tolower( c ) ); } );
      return s;
    };
    return lower( std::get<std::string>( row[plain_column( t.columns, p.column )] ) ).find( lower( p.pattern ) ) != std::string::npos;
  }
  auto const a = plain_operand( p.lhs, t, row ), b = plain_operand( p.rhs, t, row );
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

inline plain_table plain_eval( annotated_database const& db, query const& q )
{
  plain_table out;
  switch ( q.type )
  {
  case query::kind::scan:
  {
    auto const& r = db.get( q.relation );
    for ( auto const& c : r.columns )
      out.columns.push_back( q.alias + "." + c );
    for ( auto const& t : r.tuples )
      out.rows.insert( t.values );
    break;
  }
  case query::kind::select:
  {
    out = plain_eval( db, q.inputs[0] );
    std::set<std::vector<value>> kept;
    for ( auto const& row : out.rows )
      if ( std::all_of( q.predicates.begin(), q.predicates.end(), [&]( auto const& p ) { return plain_holds( p, out, row ); } ) )
        kept.insert( row );
    out.rows = std::move( kept );
    break;
  }
  case query::kind::project:
  {
    auto const in = plain_eval( db, q.inputs[0] );
    std::vector<std::size_t> idx;
    for ( auto const& c : q.columns )
    {
      idx.push_back( plain_column( in.columns, c ) );
      out.columns.push_back( in.columns[idx.back()] );
    }
    for ( auto const& row : in.rows )
    {
      std::vector<value> r;
      for ( auto i : idx )
        r.push_back( row[i] );
      out.rows.insert( r );
    }
    break;
  }
  case query::kind::join:
  {
    auto const l = plain_eval( db, q.inputs[0] ), r = plain_eval( db, q.inputs[1] );
    out.columns = l.columns;
    out.columns.insert( out.columns.end(), r.columns.begin(), r.columns.end() );
    for ( auto const& a : l.rows )
      for ( auto const& b : r.rows )
      {
        bool ok = true;
        for ( auto const& [lc, rc] : q.on )
          ok = ok && a[plain_column( l.columns, lc )] == b[plain_column( r.columns, rc )];
        if ( ok )
        {
          auto row = a;
          row.insert( row.end(), b.begin(), b.end() );
          out.rows.insert( row );
        }
      }
    break;
  }
  case query::kind::union_:
    out = plain_eval( db, q.inputs[0] );
    for ( std::size_t i = 1; i < q.inputs.size(); ++i )
      for ( auto const& row : plain_eval( db, q.inputs[i] ).rows )
        out.rows.insert( row );
    break;
  }
  return out;
}

/* ---------------------------------------------------------------------- */
/* random databases and queries                                            */
/* ---------------------------------------------------------------------- */

// Up to 12 tuples over R(A,B), S(B,C), T(A); small integer domain so joins hit.
inline annotated_database random_database( std::mt19937_64& rng )
{
  std::uniform_int_distribution<std::int64_t> val( 0, 2 );
  std::uniform_int_distribution<std::size_t> count( 0, 4 );
  variable_universe u;
  std::vector<relation> rels{ { "R", { "A", "B" }, {} }, { "S", { "B", "C" }, {} }, { "T", { "A" }, {} } };
  std::size_t next = 0;
  for ( auto& r : rels )
  {
    std::size_t const c = count( rng );
    for ( std::size_t i = 0; i < c; ++i )
    {
      std::vector<value> vals;
      for ( std::size_t j = 0; j < r.columns.size(); ++j )
        vals.emplace_back( val( rng ) );
      // occasionally reuse an existing annotation variable
      var_index ann;
      if ( next > 0 && std::bernoulli_distribution( 0.15 )( rng ) )
        ann = std::uniform_int_distribution<var_index>( 0, static_cast<var_index>( u.size() - 1 ) )( rng );
      else
        ann = u.add( "t" + std::to_string( next++ ) );
      r.tuples.push_back( { std::move( vals ), ann } );
    }
  }
  if ( u.empty() )
  {
    u.add( "t0" );
    rels[2].tuples.push_back( { { std::int64_t{ 0 } }, 0 } );
  }
  return annotated_database( u, rels );
}

struct query_builder
{
  std::mt19937_64& rng;
  int alias_counter = 0;

  struct built
  {
    query q;
    std::vector<std::string> columns;
  };

  built scan( std::optional<std::size_t> which = std::nullopt )
  {
    static std::vector<std::pair<std::string, std::vector<std::string>>> const schemas{
        { "R", { "A", "B" } }, { "S", { "B", "C" } }, { "T", { "A" } } };
    auto const& [name, cols] = schemas[which ? *which : std::uniform_int_distribution<std::size_t>( 0, 2 )( rng )];
    auto const alias = "q" + std::to_string( alias_counter++ );
    built b{ query::scan( name, alias ), {} };
    for ( auto const& c : cols )
      b.columns.push_back( alias + "." + c );
    return b;
  }

  std::string any_column( built const& b )
  {
    return b.columns[std::uniform_int_distribution<std::size_t>( 0, b.columns.size() - 1 )( rng )];
  }

  built project_to( built b, std::size_t arity )
  {
    std::vector<std::string> cols;
    for ( std::size_t i = 0; i < arity; ++i )
      cols.push_back( any_column( b ) );
    std::sort( cols.begin(), cols.end() );
    cols.erase( std::unique( cols.begin(), cols.end() ), cols.end() );
    while ( cols.size() < arity )
      cols.push_back( cols.front() );
    return { query::project( cols, std::move( b.q ) ), cols };
  }

  built make( int height )
  {
    if ( height <= 1 )
      return scan();
    switch ( std::uniform_int_distribution<int>( 0, 4 )( rng ) )
    {
    case 0:
    {
      auto in = make( height - 1 );
      if ( in.columns.empty() )
        return in;
      auto const op = static_cast<compare_op>( std::uniform_int_distribution<int>( 0, 5 )( rng ) );
      auto p = compare( col( any_column( in ) ), op, lit( std::uniform_int_distribution<std::int64_t>( 0, 2 )( rng ) ) );
      return { query::select( { p }, std::move( in.q ) ), in.columns };
    }
    case 1:
    {
      auto in = make( height - 1 );
      std::size_t const arity = std::uniform_int_distribution<std::size_t>( 0, in.columns.size() )( rng );
      std::vector<std::string> cols;
      for ( auto const& c : in.columns )
        if ( cols.size() < arity && std::bernoulli_distribution( 0.6 )( rng ) )
          cols.push_back( c );
      return { query::project( cols, std::move( in.q ) ), cols };
    }
    case 2:
    case 3:
    {
      auto l = make( height - 1 );
      auto r = make( std::uniform_int_distribution<int>( 1, height - 1 )( rng ) );
      std::vector<std::pair<std::string, std::string>> on;
      if ( !l.columns.empty() && !r.columns.empty() )
        on.emplace_back( any_column( l ), any_column( r ) );
      auto cols = l.columns;
      cols.insert( cols.end(), r.columns.begin(), r.columns.end() );
      return { query::join( on, std::move( l.q ), std::move( r.q ) ), cols };
    }
    default:
    {
      if ( height < 3 )
      {
        /* no room for aligning projections: union two scans of one relation */
        std::size_t const which = std::uniform_int_distribution<std::size_t>( 0, 2 )( rng );
        auto l = scan( which );
        auto r = scan( which );
        std::vector<query> ins;
        ins.push_back( std::move( l.q ) );
        ins.push_back( std::move( r.q ) );
        return { query::union_of( std::move( ins ) ), l.columns };
      }
      auto l = make( height - 2 );
      auto r = make( std::uniform_int_distribution<int>( 1, height - 2 )( rng ) );
      std::size_t const arity = std::min( l.columns.size(), r.columns.size() );
      auto pl = project_to( std::move( l ), arity );
      auto pr = project_to( std::move( r ), arity );
      std::vector<query> ins;
      ins.push_back( std::move( pl.q ) );
      ins.push_back( std::move( pr.q ) );
      return { query::union_of( std::move( ins ) ), pl.columns };
    }
    }
  }
};

// Checks the possible-worlds contract for one valuation; returns false on any violation.
inline bool possible_worlds_hold( annotated_database const& db, query const& q, valuation const& v )
{
  auto const full = eval_query( db, q );
  auto const world = possible_world( db, v );
  auto const plain = plain_eval( world, q );
  auto const world_prov = eval_query( world, q );
  for ( auto const& row : full.rows )
  {
    bool const ann = row.annotation.evaluate( v );
    bool const present = plain.rows.count( row.values ) > 0;
    bool const present_prov = world_prov.find( row.values ).has_value();
    if ( ann != present || ann != present_prov )
      return false;
  }
  for ( auto const& row : plain.rows )
    if ( !full.find( row ) )
      return false;
  return true;
}

} // namespace oracle
