// probedepth: optimal probing strategies, evasiveness and Boolean provenance.

#include <cstdlib>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include <probedepth/cli/commands.hpp>

using namespace probedepth;

namespace
{

std::string read_input( std::string const& path )
{
  if ( path == "-" )
    return std::string( std::istreambuf_iterator<char>( std::cin ), {} );
  return cli::read_file( path );
}

unsigned cap_from_env()
{
  if ( char const* env = std::getenv( "PROBEDEPTH_CAP" ) )
  {
    try
    {
      auto const v = std::stoul( env );
      if ( v >= 1 && v <= truth_table::max_vars )
        return static_cast<unsigned>( v );
    }
    catch ( std::exception const& )
    {
    }
    std::cerr << "warning: ignoring PROBEDEPTH_CAP='" << env << "'\n";
  }
  return default_search_cap;
}

} // namespace

int main( int argc, char** argv )
{
  CLI::App app{ "Optimal probing strategies for sets of Boolean expressions" };
  app.require_subcommand( 1 );
  unsigned const cap = cap_from_env();

  std::string file;
  bool json = false, greedy = false;
  unsigned threads = 1;

  auto* depth = app.add_subcommand( "depth", "Exact minimum depth of an expression file" );
  std::optional<std::uint64_t> budget;
  depth->add_option( "file", file, "Expression file ('-' for stdin)" )->required();
  depth->add_option( "--budget", budget, "Maximum number of expanded states" );
  depth->add_option( "--threads", threads, "Worker threads for the root expansion" )->check( CLI::Range( 1u, 256u ) );
  depth->add_flag( "--json", json, "Emit one JSON document" );

  auto* evasive = app.add_subcommand( "evasive", "Decide whether every strategy must probe all variables" );
  std::string method = "auto";
  evasive->add_option( "file", file, "Expression file ('-' for stdin)" )->required();
  evasive->add_option( "--method", method, "brute, acyclic or auto" )->check( CLI::IsMember( { "brute", "acyclic", "auto" } ) );
  evasive->add_flag( "--json", json, "Emit one JSON document" );

  auto* strategy = app.add_subcommand( "strategy", "Export an optimal (or greedy) decision diagram" );
  std::string out_format = "dot";
  strategy->add_option( "file", file, "Expression file ('-' for stdin)" )->required();
  strategy->add_option( "--out", out_format, "dot or json" )->check( CLI::IsMember( { "dot", "json" } ) );
  strategy->add_flag( "--greedy", greedy, "Use the greedy heuristic instead of exact search" );
  strategy->add_option( "--threads", threads, "Worker threads for the root expansion" )->check( CLI::Range( 1u, 256u ) );

  auto* probe = app.add_subcommand( "probe", "Run a probing session driven by the strategy" );
  std::string answers_file;
  bool interactive = false;
  probe->add_option( "file", file, "Expression file ('-' for stdin)" )->required();
  auto* answers_opt = probe->add_option( "--answers", answers_file, "File of name=value lines" );
  probe->add_flag( "--interactive", interactive, "Ask for each probed variable on stdin" )->excludes( answers_opt );
  probe->add_flag( "--greedy", greedy, "Use the greedy heuristic instead of exact search" );
  probe->add_flag( "--json", json, "Emit one JSON document" );

  auto* prov = app.add_subcommand( "prov", "Provenance evaluation and the DNF-to-database construction" );
  prov->require_subcommand( 1 );
  auto* prov_eval = prov->add_subcommand( "eval", "Evaluate a query over an annotated database" );
  std::string db_file, query_file;
  prov_eval->add_option( "--db", db_file, "Database JSON" )->required();
  prov_eval->add_option( "--query", query_file, "Query JSON" )->required();
  auto* prov_to_db = prov->add_subcommand( "to-db", "Build a database and query whose answer has the given provenance" );
  std::string dnf_file;
  std::size_t k = 0;
  std::optional<std::string> db_out, query_out;
  prov_to_db->add_option( "--dnf", dnf_file, "Expression file with one monotone DNF" )->required();
  prov_to_db->add_option( "--k", k, "Join width" )->required();
  prov_to_db->add_option( "--db-out", db_out, "Write the database here" );
  prov_to_db->add_option( "--query-out", query_out, "Write the query here" );

  auto* crosscheck = app.add_subcommand( "crosscheck", "Compare the pattern method with exhaustive search" );
  cli::crosscheck_args cc;
  crosscheck->add_option( "--max-nodes", cc.max_nodes, "Largest tree size, at most 8" );
  crosscheck->add_option( "--seed", cc.seed, "Seed for the random forests" );
  crosscheck->add_option( "--trials", cc.trials, "Number of random forests" );

  auto* family = app.add_subcommand( "family", "Print a named expression family" );
  std::string family_kind;
  unsigned param = 0;
  bool strategy_dot = false;
  family->add_option( "kind", family_kind, "psi, path, and or or" )->required();
  family->add_option( "n", param, "Level (psi) or size" )->required();
  family->add_flag( "--strategy", strategy_dot, "Print the constructed psi strategy as DOT" );

  auto* factor = app.add_subcommand( "factor", "Read-once factorization of monotone members" );
  factor->add_option( "file", file, "Expression file ('-' for stdin)" )->required();

  try
  {
    app.parse( argc, argv );
  }
  catch ( CLI::ParseError const& e )
  {
    auto const code = app.exit( e );
    return code == 0 ? 0 : 2;
  }

  cli::command_outcome result;
  auto const run_on_file = [&]( auto&& fn ) {
    try
    {
      return fn( read_input( file ) );
    }
    catch ( cli::usage_error const& e )
    {
      return cli::command_outcome{ 2, std::string( "error: " ) + e.what() + "\n" };
    }
  };

  if ( depth->parsed() )
    result = run_on_file( [&]( std::string const& text ) { return cli::cmd_depth( text, { budget, json, threads, cap } ); } );
  else if ( evasive->parsed() )
    result = run_on_file( [&]( std::string const& text ) {
      return cli::cmd_evasive( text, { cli::evasive_method_from_string( method ), json, cap } );
    } );
  else if ( strategy->parsed() )
    result = run_on_file( [&]( std::string const& text ) { return cli::cmd_strategy( text, { out_format == "json", greedy, threads, cap } ); } );
  else if ( probe->parsed() )
    result = run_on_file( [&]( std::string const& text ) {
      cli::probe_args a;
      a.interactive = interactive;
      a.greedy = greedy;
      a.json = json;
      a.cap = cap;
      if ( !answers_file.empty() )
        a.answers_text = cli::read_file( answers_file );
      return cli::cmd_probe( text, a );
    } );
  else if ( prov_eval->parsed() )
    result = cli::guarded( [&] { return cli::cmd_prov_eval( cli::read_file( db_file ), cli::read_file( query_file ) ); } );
  else if ( prov_to_db->parsed() )
    result = cli::guarded( [&] { return cli::cmd_prov_to_db( read_input( dnf_file ), { k, db_out, query_out } ); } );
  else if ( crosscheck->parsed() )
    result = cli::cmd_crosscheck( cc );
  else if ( family->parsed() )
    result = cli::cmd_family( family_kind, param, strategy_dot );
  else if ( factor->parsed() )
    result = run_on_file( [&]( std::string const& text ) { return cli::cmd_factor( text ); } );

  ( result.output.rfind( "error: ", 0 ) == 0 ? std::cerr : std::cout ) << result.output;
  return result.code;
}
