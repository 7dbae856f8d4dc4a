/*!
  \file search.hpp
  \brief Exact minimum-depth strategies by memoized branch-and-bound minimax

  The depth of a set of functions is D = 0 when every member is constant and
  otherwise min over variables x of 1 + max(D(restrict x=1), D(restrict x=0)).
  Search states are the member truth tables restricted to the variables that
  still matter; equal states reached along different probe orders share one
  memo entry, and the emitted diagram shares the corresponding sub-diagrams.
*/

#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "../boolexpr.hpp"
#include "diagram.hpp"

namespace probedepth
{

/// Default cap on the universe size accepted by the exact search.
inline constexpr unsigned default_search_cap = 20;

struct search_options
{
  /// Abort with budget_exhausted after expanding this many states.
  std::optional<std::uint64_t> budget;
  unsigned cap = default_search_cap;
  /// Worker threads for the root expansion; 1 means fully sequential.
  unsigned threads = 1;
  /// Use the monotone certificate bound for pruning.
  bool use_lower_bound = true;
};

struct depth_report
{
  std::size_t depth = 0;
  std::size_t n = 0;
  bool evasive = false;
  decision_diagram diagram;
  std::uint64_t explored_states = 0;
};

namespace detail
{

struct search_state
{
  std::uint64_t mask = 0; /* remaining relevant universe variables */
  std::vector<truth_table> tables;

  std::vector<std::uint64_t> key() const
  {
    std::vector<std::uint64_t> k{ mask };
    for ( auto const& t : tables )
      k.insert( k.end(), t.words().begin(), t.words().end() );
    return k;
  }

  unsigned width() const { return static_cast<unsigned>( std::popcount( mask ) ); }

  bool all_constant() const
  {
    return std::all_of( tables.begin(), tables.end(), []( auto const& t ) { return t.is_constant(); } );
  }

  /// Universe index of the variable at table position `pos`.
  var_index variable_at( unsigned pos ) const
  {
    std::uint64_t m = mask;
    for ( unsigned i = 0; i < pos; ++i )
      m &= m - 1u;
    return static_cast<var_index>( std::countr_zero( m ) );
  }
};

/* drops positions no member depends on */
inline search_state normalize( search_state s )
{
  unsigned const m = s.width();
  for ( unsigned pos = m; pos-- > 0; )
  {
    bool relevant = std::any_of( s.tables.begin(), s.tables.end(), [pos]( auto const& t ) { return t.depends_on( pos ); } );
    if ( relevant )
      continue;
    auto const var = s.variable_at( pos );
    for ( auto& t : s.tables )
      t = t.cofactor( pos, false );
    s.mask &= ~( std::uint64_t{ 1 } << var );
  }
  return s;
}

inline search_state child_state( search_state const& s, unsigned pos, bool value )
{
  search_state c;
  c.mask = s.mask & ~( std::uint64_t{ 1 } << s.variable_at( pos ) );
  c.tables.reserve( s.tables.size() );
  for ( auto const& t : s.tables )
    c.tables.push_back( t.cofactor( pos, value ) );
  return normalize( std::move( c ) );
}

/* certificate bound: a monotone non-constant member needs at least its
   largest prime implicant and prime implicate; anything non-constant needs 1 */
inline unsigned state_lower_bound( search_state const& s, bool monotone_bound )
{
  unsigned lb = 0;
  for ( auto const& t : s.tables )
  {
    if ( t.is_constant() )
      continue;
    unsigned b = 1;
    if ( monotone_bound && t.is_monotone() )
      b = std::max( t.max_minimal_true_size(), t.dual().max_minimal_true_size() );
    lb = std::max( lb, b );
  }
  return lb;
}

struct key_hash
{
  std::size_t operator()( std::vector<std::uint64_t> const& k ) const noexcept
  {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for ( auto w : k )
    {
      h ^= w + 0x9e3779b97f4a7c15ull + ( h << 6 ) + ( h >> 2 );
      h *= 0x100000001b3ull;
    }
    return static_cast<std::size_t>( h );
  }
};

class minimax_search
{
public:
  static constexpr int unbounded = std::numeric_limits<int>::max() / 4;

  minimax_search( search_options const& opts ) : opts_( opts ) {}

  /* exact depth if it is <= limit, otherwise some lower bound > limit */
  int solve( search_state const& s, int limit )
  {
    auto const key = s.key();
    entry e = lookup( key );
    if ( e.exact >= 0 )
      return e.exact;
    if ( e.lower > limit )
      return e.lower;
    count_expansion();

    if ( s.all_constant() )
    {
      store( key, entry{ 0, 0, -1 } );
      return 0;
    }

    int const m = static_cast<int>( s.width() );
    int const lb = std::max( e.lower, static_cast<int>( state_lower_bound( s, opts_.use_lower_bound ) ) );
    int const cap = std::min( limit, m );
    if ( lb > cap )
    {
      store( key, entry{ lb, -1, -1 } );
      return lb;
    }

    int best = unbounded;
    int best_var = -1;
    for ( unsigned pos = 0; pos < static_cast<unsigned>( m ); ++pos )
    {
      int const child_limit = std::min( cap, best - 1 ) - 1;
      if ( child_limit < 0 )
        break;
      int const d1 = solve( child_state( s, pos, true ), child_limit );
      if ( d1 > child_limit )
        continue;
      int const d0 = solve( child_state( s, pos, false ), child_limit );
      if ( d0 > child_limit )
        continue;
      int const cand = 1 + std::max( d0, d1 );
      if ( cand < best )
      {
        best = cand;
        best_var = static_cast<int>( s.variable_at( pos ) );
        if ( best == lb )
          break;
      }
    }

    if ( best <= cap )
    {
      store( key, entry{ best, best, best_var } );
      return best;
    }
    store( key, entry{ cap + 1, -1, -1 } );
    return cap + 1;
  }

  /* root expansion with children solved concurrently; same result as solve */
  int solve_parallel( search_state const& s, unsigned threads )
  {
    if ( s.all_constant() )
      return solve( s, unbounded );
    unsigned const m = s.width();
    std::vector<int> value( m, unbounded );
    std::atomic<unsigned> next{ 0 };
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
      for ( unsigned pos = next++; pos < m; pos = next++ )
      {
        try
        {
          int const d1 = solve( child_state( s, pos, true ), unbounded );
          int const d0 = solve( child_state( s, pos, false ), unbounded );
          value[pos] = 1 + std::max( d0, d1 );
        }
        catch ( ... )
        {
          std::lock_guard lock( failure_mutex );
          failure = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    for ( unsigned i = 0; i < std::max( 1u, threads ); ++i )
      pool.emplace_back( worker );
    for ( auto& t : pool )
      t.join();
    if ( failure )
      std::rethrow_exception( failure );
    auto const it = std::min_element( value.begin(), value.end() );
    auto const pos = static_cast<unsigned>( it - value.begin() );
    store( s.key(), entry{ *it, *it, static_cast<int>( s.variable_at( pos ) ) } );
    return *it;
  }

  /* builds the diagram realizing the memoized optimum, sharing equal states */
  decision_diagram build( search_state const& root, variable_universe const& universe, std::size_t members )
  {
    decision_diagram d( universe, members );
    std::unordered_map<std::vector<std::uint64_t>, std::size_t, key_hash> made;
    d.set_root( build_node( root, d, made ) );
    return d;
  }

  std::uint64_t explored() const noexcept { return explored_.load(); }

private:
  struct entry
  {
    int lower = 0;
    int exact = -1;
    int var = -1;
  };

  entry lookup( std::vector<std::uint64_t> const& key )
  {
    std::lock_guard lock( mutex_ );
    if ( auto it = memo_.find( key ); it != memo_.end() )
      return it->second;
    return {};
  }

  /* merge is monotone: exact wins, lower bounds only grow */
  void store( std::vector<std::uint64_t> const& key, entry e )
  {
    std::lock_guard lock( mutex_ );
    auto& slot = memo_[key];
    if ( slot.exact >= 0 )
      return;
    if ( e.exact >= 0 )
      slot = e;
    else
      slot.lower = std::max( slot.lower, e.lower );
  }

  void count_expansion()
  {
    auto const n = ++explored_;
    if ( opts_.budget && n > *opts_.budget )
      throw budget_exhausted( "search budget of " + std::to_string( *opts_.budget ) + " states exhausted" );
  }

  std::size_t build_node( search_state const& s, decision_diagram& d,
                          std::unordered_map<std::vector<std::uint64_t>, std::size_t, key_hash>& made )
  {
    auto const key = s.key();
    if ( auto it = made.find( key ); it != made.end() )
      return it->second;
    std::size_t id;
    if ( s.all_constant() )
    {
      std::vector<bool> labels;
      for ( auto const& t : s.tables )
        labels.push_back( *t.constant_value() );
      id = d.add_leaf( std::move( labels ) );
    }
    else
    {
      entry e = lookup( key );
      if ( e.exact < 0 )
      {
        solve( s, unbounded );
        e = lookup( key );
      }
      auto const var = static_cast<var_index>( e.var );
      unsigned pos = static_cast<unsigned>( std::popcount( s.mask & ( ( std::uint64_t{ 1 } << var ) - 1u ) ) );
      auto const t = build_node( child_state( s, pos, true ), d, made );
      auto const f = build_node( child_state( s, pos, false ), d, made );
      id = d.add_probe( var, t, f );
    }
    made.emplace( key, id );
    return id;
  }

  search_options opts_;
  std::unordered_map<std::vector<std::uint64_t>, entry, key_hash> memo_;
  std::mutex mutex_;
  std::atomic<std::uint64_t> explored_{ 0 };
};

inline search_state initial_state( expression_set const& s, search_options const& opts )
{
  if ( s.num_vars() > opts.cap )
    throw capacity_exceeded( "universe of " + std::to_string( s.num_vars() ) + " variables exceeds the search cap of " +
                             std::to_string( opts.cap ) );
  search_state st;
  st.tables = member_tables( s, opts.cap );
  st.mask = s.num_vars() >= 64 ? ~std::uint64_t{ 0 } : ( ( std::uint64_t{ 1 } << s.num_vars() ) - 1u );
  return normalize( std::move( st ) );
}

} // namespace detail

/*! \brief Exact minimum depth with a diagram realizing it.

  Among optimal probes the lowest universe index is chosen at every node, so
  sequential runs produce identical diagrams. Throws budget_exhausted when the
  optional budget is exceeded and capacity_exceeded beyond the universe cap.
*/
inline depth_report optimal_depth( expression_set const& s, search_options const& opts = {} )
{
  auto const root = detail::initial_state( s, opts );
  detail::minimax_search search( opts );
  int const depth = opts.threads > 1 ? search.solve_parallel( root, opts.threads )
                                     : search.solve( root, detail::minimax_search::unbounded );
  depth_report r;
  r.depth = static_cast<std::size_t>( depth );
  r.n = s.num_vars();
  r.evasive = r.depth == r.n;
  r.diagram = search.build( root, s.universe(), s.size() );
  r.explored_states = search.explored();
  return r;
}

/// True iff the depth of `s` is at most `k`; the search prunes beyond `k`.
inline bool decide_depth_at_most( expression_set const& s, long long k, search_options const& opts = {} )
{
  if ( k < 0 )
    throw domain_error( "depth bound must be non-negative" );
  auto const root = detail::initial_state( s, opts );
  if ( static_cast<std::size_t>( k ) >= root.width() )
    return true;
  detail::minimax_search search( opts );
  return search.solve( root, static_cast<int>( k ) ) <= k;
}

/// Depth equals the universe size, i.e. the depth is not at most n-1.
inline bool is_evasive( expression_set const& s, search_options const& opts = {} )
{
  if ( s.num_vars() == 0 )
    return true;
  return !decide_depth_at_most( s, static_cast<long long>( s.num_vars() ) - 1, opts );
}

} // namespace probedepth
