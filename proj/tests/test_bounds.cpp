#include <nullcover/bounds.hpp>
#include <nullcover/dnf_min.hpp>
#include <nullcover/errors.hpp>

#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"

using namespace nullcover;

namespace
{

std::vector<std::string> strs( const std::vector<Point>& pts )
{
  std::vector<std::string> out;
  for ( auto const& p : pts )
    out.push_back( p.str() );
  std::sort( out.begin(), out.end() );
  return out;
}

using S = std::vector<std::string>;

} // namespace

TEST( ThetaPoint, Examples )
{
  EXPECT_EQ( theta_point( ZeroMatrix::from_strings( { "000" } ), 0, 0 ).str(), "100" );
  EXPECT_EQ( theta_point( ZeroMatrix::from_strings( { "000" } ), 0, 2 ).str(), "001" );
  EXPECT_EQ( theta_point( ZeroMatrix::from_strings( { "011" } ), 0, 0 ).str(), "111" );
  EXPECT_THROW( theta_point( ZeroMatrix::from_strings( { "011" } ), 1, 0 ), std::invalid_argument );
  EXPECT_THROW( theta_point( ZeroMatrix::from_strings( { "011" } ), 0, 3 ), std::invalid_argument );
}

TEST( NearZero, SingleZero )
{
  auto t = near_zero_points( ZeroMatrix::from_strings( { "000" } ) );
  EXPECT_EQ( strs( t.points ), ( S{ "001", "010", "100" } ) );
  EXPECT_EQ( strs( t.theta0 ), strs( t.points ) );
  EXPECT_TRUE( t.theta1.empty() );
  ASSERT_EQ( t.fans.size(), 1u );
  EXPECT_EQ( t.fans[0].size(), 3u );
}

TEST( NearZero, SharedFlipsAreDeduplicated )
{
  auto t = near_zero_points( ZeroMatrix::from_strings( { "000", "011" } ) );
  EXPECT_EQ( strs( t.points ), ( S{ "001", "010", "100", "111" } ) );
  EXPECT_EQ( t.fans[0].size(), 3u );
  EXPECT_EQ( t.fans[1].size(), 3u );
  EXPECT_EQ( strs( t.theta1 ), ( S{ "001", "010" } ) );
  EXPECT_TRUE( std::is_sorted( t.points.begin(), t.points.end() ) );
}

TEST( NearZero, AdjacentZerosExcluded )
{
  auto t = near_zero_points( ZeroMatrix::from_strings( { "000", "001" } ) );
  EXPECT_EQ( strs( t.points ), ( S{ "010", "011", "100", "101" } ) );
  for ( auto const& fan : t.fans )
  {
    EXPECT_EQ( fan.size(), 2u );
    for ( auto const& fp : fan )
      EXPECT_NE( fp.point.str().substr( 0, 2 ), "00" );
  }
}

TEST( NearZero, FanPointsAreAdjacentToTheirRow )
{
  std::mt19937_64 rng( 3 );
  auto m = oracle::random_matrix( 7, 10, rng );
  auto t = near_zero_points( m );
  for ( std::size_t i = 0; i < m.k(); ++i )
    for ( auto const& fp : t.fans[i] )
    {
      EXPECT_TRUE( adjacent( fp.point, m.row( i ) ) );
      EXPECT_FALSE( m.is_zero( fp.point ) );
      EXPECT_EQ( fp.point, theta_point( m, i, fp.column ) );
    }
}

TEST( FanLemma, Examples )
{
  EXPECT_TRUE( check_dyakonov_lemma( ZeroMatrix::from_strings( { "000" } ), Cube::from_string( "1--" ) ) );
  EXPECT_TRUE( check_dyakonov_lemma( ZeroMatrix::from_strings( { "000", "111" } ), Cube::from_string( "10-" ) ) );
  EXPECT_THROW( check_dyakonov_lemma( ZeroMatrix::from_strings( { "000" } ), Cube( 3 ) ), std::invalid_argument );
  EXPECT_THROW( check_dyakonov_lemma( ZeroMatrix::from_strings( { "000" } ), Cube::from_string( "11-" ) ), std::invalid_argument );
}

TEST( FanLemma, HoldsForPrimesWithoutAdjacentZeros )
{
  std::mt19937_64 rng( 5 );
  std::size_t pairs = 0;
  while ( pairs < 1000 )
  {
    unsigned n = 3 + rng() % 10;
    std::size_t k = 1 + rng() % 8;
    auto m = oracle::random_matrix( n, k, rng );
    if ( has_adjacent_zeros( m ) )
      continue;
    auto theta = near_zero_points( m );
    for ( auto const& k : enumerate_primes( m ).primes )
    {
      ASSERT_TRUE( check_dyakonov_lemma( m, k ) );
      ASSERT_TRUE( fans_hit_at_most_once( theta, k ) );
      ++pairs;
    }
  }
}

TEST( FanLemma, AdjacentZerosDoNotBreakIt )
{
  // Two flips of one row inside K would put the row itself inside K.
  std::mt19937_64 rng( 9 );
  for ( int it = 0; it < 300; ++it )
  {
    auto m = oracle::random_matrix( 4 + it % 4, 6, rng );
    for ( auto const& k : enumerate_primes( m ).primes )
      ASSERT_TRUE( check_dyakonov_lemma( m, k ) );
  }
}

TEST( NearZeroBound, Examples )
{
  auto single = ZeroMatrix::from_strings( { "000" } );
  EXPECT_EQ( near_zero_lower_bound( single, NearZeroMode::counting ).value, 3u );
  EXPECT_EQ( near_zero_lower_bound( single, NearZeroMode::exact_cover ).value, 3u );

  auto two = ZeroMatrix::from_strings( { "000", "111" } );
  auto b = near_zero_lower_bound( two, NearZeroMode::exact_cover );
  EXPECT_EQ( b.value, 3u );
  EXPECT_EQ( b.theta_size, 6u );
  EXPECT_FALSE( b.degraded );

  auto none = ZeroMatrix( 3, {} );
  EXPECT_EQ( near_zero_lower_bound( none, NearZeroMode::counting ).value, 0u );
  EXPECT_EQ( near_zero_lower_bound( none, NearZeroMode::exact_cover ).value, 0u );
}

TEST( NearZeroBound, DegradesToLpBoundOnBudget )
{
  std::mt19937_64 rng( 13 );
  auto m = oracle::random_matrix( 12, 10, rng );
  CoverLimits lim;
  lim.max_nodes = 1;
  auto counting = near_zero_lower_bound( m, NearZeroMode::counting );
  auto b = near_zero_lower_bound( m, NearZeroMode::exact_cover, lim );
  auto full = near_zero_lower_bound( m, NearZeroMode::exact_cover );
  EXPECT_TRUE( b.degraded );
  EXPECT_FALSE( full.degraded );
  EXPECT_GE( b.value, counting.value );
  EXPECT_LE( b.value, full.value );
}

TEST( NearZeroBound, ChainBelowShortestLength )
{
  std::mt19937_64 rng( 17 );
  for ( int it = 0; it < 80; ++it )
  {
    unsigned n = 3 + it % 6;
    std::size_t k = 1 + it % 7;
    auto m = oracle::random_matrix( n, k, rng );
    auto c = near_zero_lower_bound( m, NearZeroMode::counting ).value;
    auto e = near_zero_lower_bound( m, NearZeroMode::exact_cover ).value;
    auto shortest = shortest_dnf( m, SolveMode::exact );
    ASSERT_LE( c, e );
    ASSERT_LE( e, shortest.dnf.length() );
  }
}

TEST( RankWindow, Examples )
{
  auto [lo, hi] = rank_window( 1024, 16 );
  EXPECT_NEAR( lo, 5.72844, 1e-5 );
  EXPECT_NEAR( hi, 7.43152, 1e-5 );
  double ee = std::exp( std::exp( 1.0 ) );
  auto [lo0, hi0] = rank_window( ee, ee, 0, 0 );
  EXPECT_NEAR( lo0, std::exp( 1.0 ), 1e-12 );
  EXPECT_NEAR( hi0, 2 * std::exp( 1.0 ), 1e-12 );
  EXPECT_THROW( rank_window( 10, 1 ), std::invalid_argument );
  EXPECT_THROW( rank_window( 1, 10 ), std::invalid_argument );
}

TEST( PrimeRankProbBound, Examples )
{
  EXPECT_NEAR( prime_rank_prob_bound( 3, 1, 1 ), 3.0, 1e-12 );
  EXPECT_NEAR( prime_rank_prob_bound( 10, 100, 2 ) / 5.77296e-11, 1.0, 1e-5 );
  for ( unsigned n = 3; n <= 10; ++n )
  {
    double second = std::pow( 2.0, n ) * std::pow( 2.0, -double( n ) * ( n - 1 ) );
    EXPECT_NEAR( prime_rank_prob_bound( n, 1, n ) / second, 1.0, 1e-9 );
  }
  EXPECT_THROW( prime_rank_prob_bound( 3, 1, 0 ), std::invalid_argument );
  EXPECT_THROW( prime_rank_prob_bound( 3, 1, 4 ), std::invalid_argument );
  // Large n stays finite.
  EXPECT_TRUE( std::isfinite( prime_rank_prob_bound( 1000, 1e6, 40 ) ) );
}

TEST( LengthLeadingTerm, Examples )
{
  EXPECT_NEAR( length_leading_term( 10, 10 ), 21.7147, 1e-4 );
  EXPECT_NEAR( length_leading_term( 3, 1 ), 2.7307, 1e-4 );
  EXPECT_NEAR( length_leading_term( std::exp( 1.0 ), 1 ), std::exp( 1.0 ), 1e-12 );
  EXPECT_THROW( length_leading_term( 1, 1 ), std::invalid_argument );
  EXPECT_NE( std::string( length_leading_term_caveat ).find( "leading term" ), std::string::npos );
}

TEST( LayerFunction, Examples )
{
  auto l = layer_function( 4, 2 );
  std::vector<std::string> rows;
  for ( auto const& r : l.rows() )
    rows.push_back( r.str() );
  EXPECT_EQ( rows, ( S{ "0011", "0101", "0110", "1001", "1010", "1100" } ) );
  EXPECT_EQ( layer_function( 3, 0 ).row( 0 ).str(), "000" );
  EXPECT_EQ( layer_function( 3, 3 ).row( 0 ).str(), "111" );
  EXPECT_THROW( layer_function( 3, 4 ), std::invalid_argument );
  EXPECT_THROW( layer_function( 30, 15, 1000 ), BudgetExceeded );
}

TEST( LayerFunction, NeverHasAdjacentZeros )
{
  for ( unsigned n = 1; n <= 10; ++n )
    for ( unsigned w = 0; w <= n; ++w )
    {
      auto l = layer_function( n, w );
      ASSERT_FALSE( has_adjacent_zeros( l ) ) << n << " " << w;
      for ( auto const& r : l.rows() )
        ASSERT_EQ( unsigned( std::popcount( r.bits() ) ), w );
    }
}

TEST( LayerBound, Examples )
{
  EXPECT_NEAR( layer_length_bound( 16, 16 ), 256.0, 1e-9 );
  EXPECT_NEAR( layer_length_bound( 100, 10 ), 2000.0, 1e-9 );
  EXPECT_THROW( layer_length_bound( 16, 1 ), std::invalid_argument );
}

TEST( TableBounds, SixteenByFour )
{
  auto r = table_bounds( 16, 4 );
  auto find = [&]( const std::string& name ) -> const BoundEntry& {
    for ( auto const& e : r.entries )
      if ( e.name == name )
        return e;
    throw std::runtime_error( "missing " + name );
  };
  EXPECT_DOUBLE_EQ( find( "nk" ).value, 64 );
  EXPECT_DOUBLE_EQ( find( "nk/log2(n)" ).value, 16 );
  EXPECT_TRUE( find( "nk/log2(n)" ).applicable );
  EXPECT_DOUBLE_EQ( find( "n" ).value, 16 );
  EXPECT_EQ( find( "n" ).kind, BoundKind::lower );
  EXPECT_EQ( find( "nk" ).kind, BoundKind::upper );
  EXPECT_NEAR( find( "nk/log(nk)" ).value, 64 / std::log( 64.0 ), 1e-12 );
  EXPECT_TRUE( r.inconsistencies().empty() );
}

TEST( TableBounds, LargeKFlagsAlmostAllRows )
{
  auto r = table_bounds( 4, 8 );
  for ( auto const& e : r.entries )
    if ( e.scope == BoundScope::almost_all && e.name != "nk/log(nk)" )
      EXPECT_FALSE( e.applicable ) << e.name;
  auto one = table_bounds( 8, 1 );
  for ( auto const& e : one.entries )
    if ( e.scope == BoundScope::existential )
      EXPECT_FALSE( e.applicable );
}

TEST( TableBounds, InconsistenciesAreReportedNotThrown )
{
  for ( unsigned n = 2; n <= 40; n += 3 )
    for ( std::uint64_t k : { 1ull, 2ull, 5ull, 100ull, 10000ull } )
    {
      auto r = table_bounds( n, k );
      for ( auto const& [lo, up] : r.inconsistencies() )
        EXPECT_NE( lo, up );
    }
  EXPECT_EQ( to_string( BoundKind::upper ), "upper" );
  EXPECT_EQ( to_string( BoundScope::almost_all ), "almost-all" );
}
