#include <random>

#include <gtest/gtest.h>

#include <probedepth/families.hpp>
#include <probedepth/strategy.hpp>

#include "oracles.hpp"

using namespace probedepth;

namespace
{

std::size_t max_term( expression_set const& s ) { return to_monotone_dnf( s[0], s.universe() ).max_term_size(); }

} // namespace

TEST( Families, PsiZero )
{
  auto const s = generate( family_kind::psi, 0 );
  EXPECT_EQ( s.universe().names(), ( std::vector<std::string>{ "w", "x", "y", "z" } ) );
  EXPECT_EQ( max_term( s ), 2u );
}

TEST( Families, PsiOne )
{
  auto const s = generate( family_kind::psi, 1 );
  EXPECT_EQ( s.num_vars(), 10u );
  EXPECT_EQ( max_term( s ), 3u );
  EXPECT_EQ( s.universe().name( 0 ), "u0" );
}

TEST( Families, PsiSizeLaw )
{
  for ( unsigned i = 0; i <= max_psi_level; ++i )
  {
    auto const s = generate( family_kind::psi, i );
    EXPECT_EQ( s.num_vars(), 6u * ( std::size_t{ 1 } << i ) - 2 ) << "i=" << i;
    EXPECT_EQ( max_term( s ), i + 2u );
    EXPECT_FALSE( contains_negation( s[0] ) );
  }
  EXPECT_THROW( generate( family_kind::psi, max_psi_level + 1 ), domain_error );
}

TEST( Families, AndOrPath )
{
  EXPECT_EQ( family_text( family_kind::and_, 3 ), "x1 & x2 & x3" );
  EXPECT_EQ( family_text( family_kind::or_, 2 ), "x1 | x2" );
  EXPECT_EQ( family_text( family_kind::path, 2 ), "(x0 & x1) | (x1 & x2)" );
  EXPECT_THROW( generate( family_kind::and_, 0 ), domain_error );
  EXPECT_THROW( generate( family_kind::path, 0 ), domain_error );
  EXPECT_EQ( family_from_string( "or" ), family_kind::or_ );
  EXPECT_THROW( family_from_string( "xor" ), domain_error );
}

TEST( Families, PathThreeIsPsiZeroUpToRenaming )
{
  auto const path = generate( family_kind::path, 3 );
  auto const psi = generate( family_kind::psi, 0 );
  EXPECT_EQ( oracle::brute_table( path[0], 4 ), oracle::brute_table( psi[0], 4 ) );
}

TEST( Families, AndOrDepthIsN )
{
  for ( unsigned n = 1; n <= 12; ++n )
    for ( auto k : { family_kind::and_, family_kind::or_ } )
    {
      auto const r = optimal_depth( generate( k, n ) );
      EXPECT_EQ( r.depth, n );
      EXPECT_TRUE( r.evasive );
    }
}

TEST( PsiStrategy, DepthAndSoundness )
{
  for ( unsigned i = 0; i <= 2; ++i )
  {
    auto const d = psi_strategy( i );
    EXPECT_EQ( diagram_depth( d ), 2 * i + 3 ) << "i=" << i;
    EXPECT_FALSE( validate_structure( d ).has_value() );
    if ( i <= 1 )
    {
      EXPECT_FALSE( find_label_error( d, generate( family_kind::psi, i ) ).has_value() );
    }
  }
  for ( unsigned i = 3; i <= max_psi_level; ++i )
    EXPECT_EQ( diagram_depth( psi_strategy( i ) ), 2 * i + 3 );
}

TEST( PsiStrategy, RandomValuationsAtLevelTwo )
{
  auto const s = generate( family_kind::psi, 2 );
  auto const d = psi_strategy( 2 );
  std::mt19937_64 rng( 61 );
  for ( int t = 0; t < 2000; ++t )
    EXPECT_TRUE( labels_correct( d, s, valuation::from_bits( s.num_vars(), rng() ) ) );
}

TEST( PsiStrategy, MatchesOptimalDepth )
{
  EXPECT_EQ( optimal_depth( generate( family_kind::psi, 0 ) ).depth, 3u );
  auto const r = optimal_depth( generate( family_kind::psi, 1 ) );
  EXPECT_EQ( r.depth, 5u );
  EXPECT_FALSE( r.evasive );
}

TEST( PsiStrategy, LowerBoundAtLevelTwo )
{
  auto const s = generate( family_kind::psi, 2 );
  EXPECT_EQ( monotone_depth_lower_bound( s[0], s.universe() ), 4u );
}

TEST( PsiStrategy, LevelOneAgreesWithReferenceOracle )
{
  auto const s = generate( family_kind::psi, 1 );
  EXPECT_EQ( oracle::assignment_memo_depth( oracle::brute_tables( s ), s.num_vars() ), 5 );
}
