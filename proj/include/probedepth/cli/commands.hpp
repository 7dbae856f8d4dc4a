/*!
  \file commands.hpp
  \brief Command implementations behind the probedepth executable

  Every command returns its exit code and the text destined for standard
  output: 0 on success, 1 for domain failures (over-cap universe, method not
  applicable, missing answer, disagreement), 2 for unreadable input.
*/

#pragma once

#include <cctype>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "../boolexpr.hpp"
#include "../families.hpp"
#include "../graphdnf.hpp"
#include "../provenance.hpp"
#include "../readonce.hpp"
#include "../strategy.hpp"

namespace probedepth::cli
{

/// Bad flags or unreadable files; exit code 2.
class usage_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct command_outcome
{
  int code = 0;
  std::string output;
};

/// Runs `body`, mapping parse errors to exit 2 and other library errors to exit 1.
inline command_outcome guarded( std::function<command_outcome()> const& body )
{
  try
  {
    return body();
  }
  catch ( usage_error const& e )
  {
    return { 2, std::string( "error: " ) + e.what() + "\n" };
  }
  catch ( parse_error const& e )
  {
    return { 2, std::string( "error: " ) + e.what() + "\n" };
  }
  catch ( error const& e )
  {
    return { 1, std::string( "error: " ) + e.what() + "\n" };
  }
  catch ( nlohmann::json::exception const& e )
  {
    return { 2, std::string( "error: " ) + e.what() + "\n" };
  }
}

inline std::string read_file( std::string const& path )
{
  std::ifstream in( path, std::ios::binary );
  if ( !in )
    throw usage_error( "cannot open '" + path + "'" );
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline nlohmann::json parse_json( std::string const& text, std::string const& what )
{
  try
  {
    return nlohmann::json::parse( text );
  }
  catch ( nlohmann::json::parse_error const& e )
  {
    throw parse_error( what + " is not valid JSON: " + e.what(), 1, 1 );
  }
}

/// Accepts y/n, yes/no, true/false and 1/0 in any case.
inline std::optional<bool> parse_answer( std::string s )
{
  auto const b = s.find_first_not_of( " \t\r" );
  auto const e = s.find_last_not_of( " \t\r" );
  s = b == std::string::npos ? "" : s.substr( b, e - b + 1 );
  for ( auto& c : s )
    c = static_cast<char>( std::tolower( static_cast<unsigned char>( c ) ) );
  if ( s == "y" || s == "yes" || s == "true" || s == "1" )
    return true;
  if ( s == "n" || s == "no" || s == "false" || s == "0" )
    return false;
  return std::nullopt;
}

/* ---------------------------------------------------------------------- */

struct depth_args
{
  std::optional<std::uint64_t> budget;
  bool json = false;
  unsigned threads = 1;
  unsigned cap = default_search_cap;
};

inline command_outcome cmd_depth( std::string const& text, depth_args const& a )
{
  return guarded( [&]() -> command_outcome {
    auto const s = parse_expressions( text );
    search_options opts;
    opts.budget = a.budget;
    opts.threads = a.threads;
    opts.cap = a.cap;
    auto const r = optimal_depth( s, opts );
    std::ostringstream out;
    if ( a.json )
      out << nlohmann::json{ { "depth", r.depth }, { "n", r.n }, { "evasive", r.evasive }, { "explored_states", r.explored_states } }.dump( 2 ) << "\n";
    else
      out << "depth=" << r.depth << " n=" << r.n << " evasive=" << ( r.evasive ? "true" : "false" ) << " explored=" << r.explored_states << "\n";
    return { 0, out.str() };
  } );
}

/* ---------------------------------------------------------------------- */

enum class evasive_method
{
  brute,
  acyclic,
  auto_
};

inline evasive_method evasive_method_from_string( std::string const& s )
{
  if ( s == "brute" )
    return evasive_method::brute;
  if ( s == "acyclic" )
    return evasive_method::acyclic;
  if ( s == "auto" )
    return evasive_method::auto_;
  throw usage_error( "unknown method '" + s + "'" );
}

struct evasive_args
{
  evasive_method method = evasive_method::auto_;
  bool json = false;
  unsigned cap = default_search_cap;
};

/// Acyclic verdict for a single-member monotone 2-DNF set; throws domain_error otherwise.
inline acyclic_verdict acyclic_method( expression_set const& s )
{
  if ( s.size() != 1 )
    throw domain_error( "acyclic method needs exactly one expression" );
  if ( contains_negation( s[0] ) )
    throw domain_error( "acyclic method needs a negation-free expression" );
  auto const d = to_monotone_dnf( s[0], s.universe() );
  if ( d.max_term_size() > 2 )
    throw domain_error( "acyclic method needs terms of at most two variables" );
  return analyze_acyclic( d, s.universe() );
}

inline command_outcome cmd_evasive( std::string const& text, evasive_args const& a )
{
  return guarded( [&]() -> command_outcome {
    auto const s = parse_expressions( text );
    std::optional<acyclic_verdict> verdict;
    if ( a.method != evasive_method::brute )
    {
      try
      {
        verdict = acyclic_method( s );
      }
      catch ( domain_error const& )
      {
        if ( a.method == evasive_method::acyclic )
          throw;
      }
    }

    nlohmann::json j;
    std::ostringstream out;
    if ( verdict )
    {
      j = { { "method", "acyclic" }, { "evasive", verdict->evasive }, { "n", s.num_vars() } };
      out << "evasive=" << ( verdict->evasive ? "true" : "false" ) << " n=" << s.num_vars() << " method=acyclic";
      if ( verdict->witness )
      {
        auto const p = to_string( *verdict->witness, s.universe() );
        j["pattern"] = p;
        out << " pattern=" << p;
      }
      if ( verdict->free_variable )
      {
        auto const& name = s.universe().name( *verdict->free_variable );
        j["free_variable"] = name;
        out << " free_variable=" << name;
      }
    }
    else
    {
      search_options opts;
      opts.cap = a.cap;
      bool const ev = is_evasive( s, opts );
      j = { { "method", "brute" }, { "evasive", ev }, { "n", s.num_vars() } };
      out << "evasive=" << ( ev ? "true" : "false" ) << " n=" << s.num_vars() << " method=brute";
    }
    out << "\n";
    return { 0, a.json ? j.dump( 2 ) + "\n" : out.str() };
  } );
}

/* ---------------------------------------------------------------------- */

struct strategy_args
{
  bool json = false; /* --out json instead of dot */
  bool greedy = false;
  unsigned threads = 1;
  unsigned cap = default_search_cap;
};

inline decision_diagram chosen_strategy( expression_set const& s, bool greedy, unsigned threads, unsigned cap )
{
  if ( greedy )
    return greedy_strategy( s );
  search_options opts;
  opts.threads = threads;
  opts.cap = cap;
  return optimal_depth( s, opts ).diagram;
}

inline command_outcome cmd_strategy( std::string const& text, strategy_args const& a )
{
  return guarded( [&]() -> command_outcome {
    auto const s = parse_expressions( text );
    auto const d = chosen_strategy( s, a.greedy, a.threads, a.cap );
    return { 0, a.json ? to_json( d ).dump( 2 ) + "\n" : to_dot( d ) };
  } );
}

/* ---------------------------------------------------------------------- */

struct probe_args
{
  std::optional<std::string> answers_text; /* name=value lines */
  bool interactive = false;
  bool greedy = false;
  bool json = false;
  unsigned cap = default_search_cap;
};

inline std::map<std::string, bool> parse_answers( std::string const& text )
{
  std::map<std::string, bool> out;
  std::istringstream in( text );
  std::string line;
  std::size_t no = 0;
  while ( std::getline( in, line ) )
  {
    ++no;
    if ( auto h = line.find( '#' ); h != std::string::npos )
      line.erase( h );
    if ( line.find_first_not_of( " \t\r" ) == std::string::npos )
      continue;
    auto const eq = line.find( '=' );
    if ( eq == std::string::npos )
      throw parse_error( "expected name=value", no, 1 );
    auto name = line.substr( 0, eq );
    name.erase( 0, name.find_first_not_of( " \t" ) );
    name.erase( name.find_last_not_of( " \t" ) + 1 );
    auto const v = parse_answer( line.substr( eq + 1 ) );
    if ( !v )
      throw parse_error( "cannot read answer for '" + name + "'", no, eq + 2 );
    out[name] = *v;
  }
  return out;
}

/// Interactive answers: prompts on `prompt`, reads lines from `in`, re-asks on unreadable input.
inline answer_source interactive_answers( std::istream& in, std::ostream& prompt )
{
  return [&in, &prompt]( var_index, std::string const& name ) -> std::optional<bool> {
    std::string line;
    while ( true )
    {
      prompt << name << "? [y/n] " << std::flush;
      if ( !std::getline( in, line ) )
        return std::nullopt;
      if ( auto v = parse_answer( line ) )
        return v;
      prompt << "please answer y or n\n";
    }
  };
}

inline command_outcome cmd_probe( std::string const& text, probe_args const& a, std::istream& in = std::cin,
                                  std::ostream& prompt = std::cerr )
{
  return guarded( [&]() -> command_outcome {
    auto const s = parse_expressions( text );
    if ( !a.interactive && !a.answers_text )
      throw usage_error( "probe needs --answers FILE or --interactive" );
    auto const d = chosen_strategy( s, a.greedy, 1, a.cap );
    answer_source source;
    if ( a.interactive )
      source = interactive_answers( in, prompt );
    else
    {
      auto const answers = parse_answers( *a.answers_text );
      source = [answers]( var_index, std::string const& name ) -> std::optional<bool> {
        auto it = answers.find( name );
        if ( it == answers.end() )
          return std::nullopt;
        return it->second;
      };
    }
    auto const t = run_session( d, source );

    std::ostringstream out;
    if ( a.json )
    {
      nlohmann::json probes = nlohmann::json::array();
      for ( auto [v, b] : t.probes )
        probes.push_back( { { "var", s.universe().name( v ) }, { "value", b } } );
      out << nlohmann::json{ { "probes", probes }, { "labels", t.labels }, { "probe_count", t.probe_count() }, { "depth", diagram_depth( d ) } }.dump( 2 )
          << "\n";
    }
    else
    {
      for ( std::size_t i = 0; i < t.probes.size(); ++i )
        out << "probe " << ( i + 1 ) << ": " << s.universe().name( t.probes[i].first ) << " = " << ( t.probes[i].second ? "true" : "false" ) << "\n";
      out << "labels: " << label_vector_string( t.labels ) << "\n";
      out << "probes: " << t.probe_count() << "\n";
    }
    return { 0, out.str() };
  } );
}

/* ---------------------------------------------------------------------- */

inline command_outcome cmd_prov_eval( std::string const& db_text, std::string const& query_text )
{
  return guarded( [&]() -> command_outcome {
    auto const db = database_from_json( parse_json( db_text, "database" ) );
    auto const q = query_from_json( parse_json( query_text, "query" ) );
    return { 0, to_json( eval_query( db, q ) ).dump( 2 ) + "\n" };
  } );
}

struct to_db_args
{
  std::size_t k = 0;
  std::optional<std::string> db_out, query_out;
};

inline command_outcome cmd_prov_to_db( std::string const& dnf_text, to_db_args const& a )
{
  return guarded( [&]() -> command_outcome {
    auto const s = parse_expressions( dnf_text );
    if ( s.size() != 1 )
      throw domain_error( "to-db needs exactly one expression" );
    auto const d = to_monotone_dnf( s[0], s.universe() );
    auto const [db, q] = dnf_to_database( d, a.k );
    auto const jdb = to_json( db );
    auto const jq = to_json( q );
    std::ostringstream out;
    auto write = [&]( std::string const& path, nlohmann::json const& j ) {
      std::ofstream f( path );
      if ( !f )
        throw domain_error( "cannot write '" + path + "'" );
      f << j.dump( 2 ) << "\n";
      out << "wrote " << path << "\n";
    };
    if ( a.db_out )
      write( *a.db_out, jdb );
    if ( a.query_out )
      write( *a.query_out, jq );
    if ( !a.db_out && !a.query_out )
      out << nlohmann::json{ { "database", jdb }, { "query", jq } }.dump( 2 ) << "\n";
    return { 0, out.str() };
  } );
}

/* ---------------------------------------------------------------------- */

struct crosscheck_args
{
  unsigned max_nodes = 7;
  std::uint64_t seed = 1;
  unsigned trials = 1000;
};

struct crosscheck_case
{
  variable_universe universe;
  monotone_dnf dnf;
};

/// Graph DNF over x0..x(n-1) from edges and singleton-term vertices.
inline crosscheck_case make_graph_case( std::size_t n, std::vector<graph_dnf::edge> const& edges, std::vector<var_index> const& singletons )
{
  variable_universe u;
  for ( std::size_t i = 0; i < n; ++i )
    u.add( "x" + std::to_string( i ) );
  std::vector<term> terms;
  for ( auto [a, b] : edges )
    terms.push_back( { a, b } );
  for ( auto v : singletons )
    terms.push_back( { v } );
  monotone_dnf d( u, terms );
  return { u, d };
}

/// True when the pattern method and the exhaustive search agree.
inline bool agrees( crosscheck_case const& c )
{
  bool const fast = decide_evasive_acyclic( c.dnf, c.universe );
  bool const slow = is_evasive( expression_set( c.universe, { c.dnf.to_expression() } ) );
  return fast == slow;
}

/// Forest on n vertices (each vertex joins an earlier one with probability 2/3), random singleton terms.
inline crosscheck_case random_forest_case( std::mt19937_64& rng )
{
  std::uniform_int_distribution<std::size_t> size( 1, 8 );
  std::bernoulli_distribution link( 2.0 / 3.0 ), single( 0.2 );
  std::size_t const n = size( rng );
  std::vector<graph_dnf::edge> edges;
  std::vector<var_index> singletons;
  for ( std::size_t v = 1; v < n; ++v )
    if ( link( rng ) )
    {
      std::uniform_int_distribution<var_index> parent( 0, static_cast<var_index>( v - 1 ) );
      edges.emplace_back( parent( rng ), static_cast<var_index>( v ) );
    }
  for ( std::size_t v = 0; v < n; ++v )
    if ( single( rng ) )
      singletons.push_back( static_cast<var_index>( v ) );
  if ( edges.empty() && singletons.empty() )
    singletons.push_back( 0 );
  return make_graph_case( n, edges, singletons );
}

inline command_outcome cmd_crosscheck( crosscheck_args const& a )
{
  return guarded( [&]() -> command_outcome {
    if ( a.max_nodes < 2 || a.max_nodes > 8 )
      throw usage_error( "--max-nodes must be between 2 and 8" );
    std::ostringstream out;
    std::size_t bad = 0, trees = 0;
    for ( unsigned n = 2; n <= a.max_nodes; ++n )
    {
      std::size_t count = 0, wrong = 0;
      foreach_labeled_tree( n, [&]( std::vector<graph_dnf::edge> const& edges ) {
        ++count;
        if ( !agrees( make_graph_case( n, edges, {} ) ) )
          ++wrong;
      } );
      out << "trees on " << n << " nodes: " << count << " checked, " << wrong << " disagreements\n";
      trees += count;
      bad += wrong;
    }
    std::mt19937_64 rng( a.seed );
    std::size_t wrong = 0;
    for ( unsigned t = 0; t < a.trials; ++t )
      if ( !agrees( random_forest_case( rng ) ) )
        ++wrong;
    out << "random forests (seed " << a.seed << "): " << a.trials << " checked, " << wrong << " disagreements\n";
    bad += wrong;
    out << "total: " << ( trees + a.trials ) << " checked, " << bad << " disagreements\n";
    return { bad == 0 ? 0 : 1, out.str() };
  } );
}

/* ---------------------------------------------------------------------- */

inline command_outcome cmd_family( std::string const& kind, unsigned param, bool strategy_dot )
{
  return guarded( [&]() -> command_outcome {
    family_kind k;
    try
    {
      k = family_from_string( kind );
    }
    catch ( domain_error const& e )
    {
      throw usage_error( e.what() );
    }
    if ( strategy_dot )
    {
      if ( k != family_kind::psi )
        throw domain_error( "a constructed strategy exists only for psi" );
      return { 0, to_dot( psi_strategy( param ) ) };
    }
    return { 0, to_string( generate( k, param ) ) };
  } );
}

inline command_outcome cmd_factor( std::string const& text )
{
  return guarded( [&]() -> command_outcome {
    auto const s = parse_expressions( text );
    std::ostringstream out;
    std::vector<expression> factored;
    bool all = true;
    for ( auto const& m : s.members() )
    {
      if ( contains_negation( m ) )
        throw domain_error( "factor needs negation-free expressions" );
      auto const f = factor_read_once( to_monotone_dnf( m, s.universe() ) );
      if ( f )
      {
        out << to_string( *f, s.universe() ) << "\n";
        factored.push_back( *f );
      }
      else
      {
        out << "# no read-once factorization found for " << to_string( m, s.universe() ) << "\n";
        factored.push_back( m );
        all = false;
      }
    }
    out << "# overall read-once: " << ( is_overall_read_once( expression_set( s.universe(), factored ) ) ? "true" : "false" ) << "\n";
    return { all ? 0 : 1, out.str() };
  } );
}

} // namespace probedepth::cli
