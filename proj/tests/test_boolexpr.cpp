#include <random>

#include <gtest/gtest.h>

#include <probedepth/boolexpr.hpp>

#include "oracles.hpp"

using namespace probedepth;

namespace
{

expression_set psi0() { return parse_expressions( "vars: w x y z\n(w&x)|(x&y)|(y&z)" ); }

std::vector<bool> table_bits( truth_table const& t )
{
  std::vector<bool> out;
  for ( std::uint64_t i = 0; i < t.num_bits(); ++i )
    out.push_back( t.get( i ) );
  return out;
}

} // namespace

TEST( Universe, RejectsDuplicatesAndBadNames )
{
  variable_universe u;
  u.add( "x" );
  EXPECT_THROW( u.add( "x" ), domain_error );
  EXPECT_THROW( u.add( "1x" ), domain_error );
  EXPECT_THROW( u.add( "" ), domain_error );
  EXPECT_EQ( u.index_of( "x" ), 0u );
  EXPECT_THROW( u.index_of( "y" ), unknown_variable );
}

TEST( Parse, HeaderFixesUniverse )
{
  auto const s = psi0();
  EXPECT_EQ( s.num_vars(), 4u );
  ASSERT_EQ( s.size(), 1u );
  EXPECT_EQ( s.universe().names(), ( std::vector<std::string>{ "w", "x", "y", "z" } ) );
}

TEST( Parse, InfersUniverseInFirstOccurrenceOrder )
{
  auto const s = parse_expressions( "x&y\nx|z" );
  EXPECT_EQ( s.size(), 2u );
  EXPECT_EQ( s.universe().names(), ( std::vector<std::string>{ "x", "y", "z" } ) );
}

TEST( Parse, ConstantOnly )
{
  auto const s = parse_expressions( "1" );
  EXPECT_EQ( s.num_vars(), 0u );
  ASSERT_TRUE( s[0].is_constant() );
  EXPECT_TRUE( s[0].value() );
}

TEST( Parse, SemicolonsCommentsAndPrecedence )
{
  auto const s = parse_expressions( "# comment\na | b & !c ; (a |\n b)" );
  EXPECT_EQ( s.size(), 2u );
  EXPECT_EQ( to_string( s[0], s.universe() ), "(a | (b & !c))" );
}

TEST( Parse, Errors )
{
  EXPECT_THROW( parse_expressions( "" ), parse_error );
  EXPECT_THROW( parse_expressions( "# only a comment\n" ), parse_error );
  EXPECT_THROW( parse_expressions( "vars: x x\nx" ), parse_error );
  EXPECT_THROW( parse_expressions( "vars: x\nx & y" ), parse_error );
  try
  {
    parse_expressions( "x & y\ny | ) z" );
    FAIL();
  }
  catch ( parse_error const& e )
  {
    EXPECT_EQ( e.line(), 2u );
    EXPECT_EQ( e.column(), 5u );
  }
  /* a newline ends the statement, so the dangling operator fails on line 1 */
  try
  {
    parse_expressions( "x &\n& y" );
    FAIL();
  }
  catch ( parse_error const& e )
  {
    EXPECT_EQ( e.line(), 1u );
  }
}

TEST( Evaluate, Examples )
{
  auto const s = psi0();
  auto v = valuation::from_bits( 4, 0b0011 ); /* w, x true */
  EXPECT_TRUE( evaluate( s[0], v ) );
  v = valuation::from_bits( 4, 0b1001 ); /* w, z true */
  EXPECT_FALSE( evaluate( s[0], v ) );
  auto const xy = parse_expressions( "x & y" );
  EXPECT_FALSE( evaluate( xy[0], valuation::from_bits( 2, 0b01 ) ) );
}

TEST( Restrict, PsiZeroOnX )
{
  auto const s = psi0();
  auto const f = restrict_set( s, "x", false );
  EXPECT_EQ( to_string( f[0], f.universe() ), "(y & z)" );
  auto const t = restrict_set( s, "x", true );
  auto const expected = parse_expression( "w | y", t.universe() );
  EXPECT_EQ( truth_table_over( t[0], { 0, 1, 2 } ), truth_table_over( expected, { 0, 1, 2 } ) );
  auto const xz = parse_expressions( "x | z" );
  auto const r = restrict( xz[0], 0, true );
  ASSERT_TRUE( r.is_constant() );
  EXPECT_TRUE( r.value() );
}

TEST( Restrict, UnknownVariable )
{
  EXPECT_THROW( restrict_set( psi0(), "q", true ), unknown_variable );
}

TEST( RestrictSet, ExampleOne )
{
  auto const s = parse_expressions( "x&y\nx|z" );
  auto const t = restrict_set( s, "x", true );
  EXPECT_EQ( t.universe().names(), ( std::vector<std::string>{ "y", "z" } ) );
  EXPECT_EQ( to_string( t[0], t.universe() ), "y" );
  EXPECT_EQ( to_string( t[1], t.universe() ), "1" );
  auto const f = restrict_set( s, "x", false );
  EXPECT_EQ( to_string( f[0], f.universe() ), "0" );
  EXPECT_EQ( to_string( f[1], f.universe() ), "z" );
  auto const one = restrict_set( parse_expressions( "vars: a\n1" ), "a", false );
  EXPECT_TRUE( one[0].is_constant() && one[0].value() );
}

TEST( Simplify, Examples )
{
  variable_universe const u( { "y", "z", "x" } );
  auto const a = simplify( parse_expression( "0 & (y | z)", u ) );
  EXPECT_TRUE( a.is_constant() && !a.value() );
  EXPECT_EQ( to_string( simplify( parse_expression( "1 & (y | z)", u ) ), u ), "(y | z)" );
  EXPECT_EQ( to_string( simplify( parse_expression( "!!x", u ) ), u ), "x" );
  EXPECT_EQ( to_string( simplify( parse_expression( "(y & (z & x)) | 0", u ) ), u ), "(y & z & x)" );
}

TEST( TruthTable, Examples )
{
  auto const xy = parse_expressions( "x & y" );
  EXPECT_EQ( truth_table_of( xy[0] ).to_string(), "0001" );
  auto const one = parse_expressions( "1" );
  EXPECT_EQ( truth_table_of( one[0] ).to_string(), "1" );
  auto const t = truth_table_of( psi0()[0] );
  EXPECT_EQ( t.num_bits(), 16u );
  EXPECT_EQ( t.count_ones(), 8u );
  EXPECT_EQ( oracle::count_ones( oracle::brute_table( psi0()[0], 4 ) ), 8u );
  EXPECT_EQ( t.to_string(), "0001001100011111" );
}

TEST( TruthTable, CapEnforced )
{
  std::string text;
  for ( int i = 0; i < 22; ++i )
    text += ( i ? " | v" : "v" ) + std::to_string( i );
  auto const s = parse_expressions( text );
  EXPECT_THROW( truth_table_of( s[0] ), capacity_exceeded );
}

TEST( MonotoneDnf, Conversion )
{
  auto const s = parse_expressions( "a0 & ((r0 & e0) | (r1 & e1) | (r2 & e3))" );
  auto const d = to_monotone_dnf( s[0], s.universe() );
  EXPECT_EQ( to_string( d ), "((a0 & r0 & e0) | (a0 & r1 & e1) | (a0 & r2 & e3))" );
  EXPECT_EQ( d.terms().size(), 3u );
  auto const abs = parse_expressions( "x | (x & y)" );
  EXPECT_EQ( to_monotone_dnf( abs[0], abs.universe() ).terms(), ( std::vector<term>{ { 0 } } ) );
  auto const idem = parse_expressions( "(x & x) & y" );
  EXPECT_EQ( to_monotone_dnf( idem[0], idem.universe() ).terms(), ( std::vector<term>{ { 0, 1 } } ) );
  auto const neg = parse_expressions( "x & !y" );
  EXPECT_THROW( to_monotone_dnf( neg[0], neg.universe() ), domain_error );
}

TEST( MonotoneDnf, ConstantEncoding )
{
  auto const t = parse_expressions( "vars: x\nx | 1" );
  auto const d = to_monotone_dnf( t[0], t.universe() );
  EXPECT_TRUE( d.is_true() );
  EXPECT_EQ( d.terms(), ( std::vector<term>{ term{} } ) );
  auto const f = parse_expressions( "vars: x\nx & 0" );
  EXPECT_TRUE( to_monotone_dnf( f[0], f.universe() ).is_false() );
}

TEST( IsConstant, Examples )
{
  auto const s = parse_expressions( "x | !x\nx & !x" );
  EXPECT_EQ( is_constant( s[0] ), std::optional<bool>( true ) );
  EXPECT_EQ( is_constant( s[1] ), std::optional<bool>( false ) );
  EXPECT_EQ( is_constant( psi0()[0] ), std::nullopt );
}

TEST( LowerBound, Examples )
{
  auto const a = parse_expressions( "x1 & x2 & x3" );
  EXPECT_EQ( monotone_depth_lower_bound( a[0], a.universe() ), 3u );
  auto const p = psi0();
  EXPECT_EQ( monotone_depth_lower_bound( p[0], p.universe() ), 2u );
  auto const x = parse_expressions( "x" );
  EXPECT_EQ( monotone_depth_lower_bound( x[0], x.universe() ), 1u );
  auto const neg = parse_expressions( "!x" );
  EXPECT_THROW( monotone_depth_lower_bound( neg[0], neg.universe() ), domain_error );
}

TEST( LowerBound, PrimeImplicatesOfPsiZero )
{
  auto const p = psi0();
  auto const implicates = prime_implicates( to_monotone_dnf( p[0], p.universe() ) );
  /* w=0 x=1 y=2 z=3 */
  EXPECT_EQ( implicates, ( std::vector<term>{ { 0, 2 }, { 1, 2 }, { 1, 3 } } ) );
}

/* ---------------------------------------------------------------------- */
/* properties                                                              */
/* ---------------------------------------------------------------------- */

TEST( Properties, RestrictionCommutes )
{
  std::mt19937_64 rng( 11 );
  for ( int trial = 0; trial < 300; ++trial )
  {
    std::size_t const n = 2 + trial % 7;
    auto const e = oracle::random_expression( rng, n, 4 );
    var_index const x = static_cast<var_index>( rng() % n );
    var_index y = static_cast<var_index>( rng() % n );
    if ( y == x )
      y = static_cast<var_index>( ( x + 1 ) % n );
    bool const a = rng() & 1, b = rng() & 1;
    auto const lhs = restrict( restrict( e, x, a ), y, b );
    auto const rhs = restrict( restrict( e, y, b ), x, a );
    EXPECT_EQ( oracle::brute_table( lhs, n ), oracle::brute_table( rhs, n ) );
  }
}

TEST( Properties, SimplifyPreservesSemantics )
{
  std::mt19937_64 rng( 12 );
  for ( int trial = 0; trial < 300; ++trial )
  {
    std::size_t const n = 1 + trial % 10;
    auto const e = oracle::random_expression( rng, n, 5 );
    auto const s = simplify( e );
    EXPECT_EQ( oracle::brute_table( s, n ), oracle::brute_table( e, n ) );
    EXPECT_TRUE( s.is_constant() || !contains_constant( s ) );
  }
}

TEST( Properties, TruthTableMatchesEvaluation )
{
  std::mt19937_64 rng( 13 );
  for ( int trial = 0; trial < 200; ++trial )
  {
    std::size_t const n = 1 + trial % 9;
    auto const e = oracle::random_expression( rng, n, 5 );
    std::vector<var_index> all( n );
    for ( std::size_t i = 0; i < n; ++i )
      all[i] = static_cast<var_index>( i );
    EXPECT_EQ( table_bits( truth_table_over( e, all ) ), oracle::brute_table( e, n ) );
  }
}

TEST( Properties, MonotoneDnfIsAbsorbedAndEquivalent )
{
  std::mt19937_64 rng( 14 );
  for ( int trial = 0; trial < 300; ++trial )
  {
    std::size_t const n = 1 + trial % 8;
    auto const u = oracle::universe_of( n );
    auto const e = oracle::random_expression( rng, n, 4, false, false );
    auto const d = to_monotone_dnf( e, u );
    for ( auto const& a : d.terms() )
      for ( auto const& b : d.terms() )
        if ( &a != &b )
        {
          EXPECT_FALSE( std::includes( b.begin(), b.end(), a.begin(), a.end() ) );
        }
    EXPECT_EQ( oracle::brute_table( d.to_expression(), n ), oracle::brute_table( e, n ) );
  }
}

TEST( Properties, PrintParseRoundTrip )
{
  std::mt19937_64 rng( 15 );
  for ( int trial = 0; trial < 200; ++trial )
  {
    std::size_t const n = 1 + trial % 8;
    std::vector<expression> members;
    for ( int m = 0; m < 1 + trial % 3; ++m )
      members.push_back( oracle::random_expression( rng, n, 4 ) );
    expression_set const s( oracle::universe_of( n ), members );
    auto const back = parse_expressions( to_string( s ) );
    ASSERT_EQ( back.universe(), s.universe() );
    ASSERT_EQ( back.size(), s.size() );
    for ( std::size_t i = 0; i < s.size(); ++i )
      EXPECT_EQ( oracle::brute_table( back[i], n ), oracle::brute_table( s[i], n ) );
    EXPECT_EQ( to_string( back ), to_string( s ) );
  }
}

TEST( Properties, LowerBoundBelowExactDepth )
{
  std::mt19937_64 rng( 16 );
  for ( int trial = 0; trial < 120; ++trial )
  {
    std::size_t const n = 1 + trial % 8;
    auto const u = oracle::universe_of( n );
    auto const e = oracle::random_expression( rng, n, 4, false, false );
    expression_set const s( u, { e } );
    EXPECT_LE( static_cast<int>( monotone_depth_lower_bound( e, u ) ), oracle::reference_depth( s ) );
  }
}

TEST( Properties, MinimalTransversalsAreMinimalAndHitting )
{
  std::mt19937_64 rng( 17 );
  for ( int trial = 0; trial < 200; ++trial )
  {
    std::size_t const n = 1 + trial % 9;
    auto const u = oracle::universe_of( n );
    auto const d = oracle::random_kdnf( rng, u, 3 );
    auto const tr = minimal_transversals( d.terms() );
    auto hits = [&]( term const& t ) {
      return std::all_of( d.terms().begin(), d.terms().end(), [&]( term const& e ) {
        return std::any_of( e.begin(), e.end(), [&]( var_index v ) { return std::binary_search( t.begin(), t.end(), v ); } );
      } );
    };
    for ( auto const& t : tr )
    {
      EXPECT_TRUE( hits( t ) );
      for ( std::size_t i = 0; i < t.size(); ++i )
      {
        term smaller = t;
        smaller.erase( smaller.begin() + static_cast<std::ptrdiff_t>( i ) );
        EXPECT_FALSE( hits( smaller ) );
      }
    }
    /* brute force: every minimal hitting set over n variables appears */
    std::size_t brute = 0;
    for ( std::uint64_t m = 0; m < ( std::uint64_t{ 1 } << n ); ++m )
    {
      term t;
      for ( std::size_t i = 0; i < n; ++i )
        if ( m >> i & 1 )
          t.push_back( static_cast<var_index>( i ) );
      if ( !hits( t ) )
        continue;
      bool minimal = true;
      for ( std::size_t i = 0; i < t.size() && minimal; ++i )
      {
        term smaller = t;
        smaller.erase( smaller.begin() + static_cast<std::ptrdiff_t>( i ) );
        minimal = !hits( smaller );
      }
      brute += minimal;
    }
    EXPECT_EQ( tr.size(), brute );
  }
}
