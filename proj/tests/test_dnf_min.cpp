#include <nullcover/dnf_min.hpp>
#include <nullcover/errors.hpp>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace nullcover;

namespace
{

std::vector<std::string> cubes( const Dnf& d )
{
  std::vector<std::string> out;
  for ( auto const& c : d.cubes() )
    out.push_back( c.str() );
  return out;
}

Dnf dnf( unsigned n, std::initializer_list<const char*> cs )
{
  std::vector<Cube> v;
  for ( auto c : cs )
    v.push_back( Cube::from_string( c ) );
  return Dnf( n, v );
}

} // namespace

TEST( Shortest, Examples )
{
  auto single = shortest_dnf( ZeroMatrix::from_strings( { "000" } ), SolveMode::exact );
  EXPECT_EQ( single.value, 3u );
  EXPECT_EQ( cubes( single.dnf ), ( std::vector<std::string>{ "1--", "-1-", "--1" } ) );
  EXPECT_TRUE( single.certificate.optimal );
  EXPECT_EQ( single.certificate.lp_bound, 3 );
  EXPECT_EQ( single.certificate.near_zero_bound, 3u );

  auto two = shortest_dnf( ZeroMatrix::from_strings( { "000", "111" } ), SolveMode::exact );
  EXPECT_EQ( two.value, 3u );
  for ( auto const& c : two.dnf.cubes() )
    EXPECT_EQ( c.rank(), 2u );

  auto none = shortest_dnf( ZeroMatrix( 4, {} ), SolveMode::exact );
  EXPECT_EQ( none.value, 1u );
  EXPECT_EQ( cubes( none.dnf ), ( std::vector<std::string>{ "----" } ) );
}

TEST( Minimal, Examples )
{
  EXPECT_EQ( minimal_dnf( ZeroMatrix::from_strings( { "000" } ), SolveMode::exact ).value, 3u );
  auto two = minimal_dnf( ZeroMatrix::from_strings( { "000", "111" } ), SolveMode::exact );
  EXPECT_EQ( two.value, 6u );
  EXPECT_EQ( two.dnf.rank(), 6u );
  EXPECT_EQ( minimal_dnf( ZeroMatrix( 2, {} ), SolveMode::exact ).value, 0u );
}

TEST( Minimize, FullCubeOfZerosIsConstantZero )
{
  std::vector<Point> rows;
  for ( std::uint64_t b = 0; b < 4; ++b )
    rows.emplace_back( 2, b );
  auto r = shortest_dnf( ZeroMatrix( 2, rows ), SolveMode::exact );
  EXPECT_EQ( r.value, 0u );
  EXPECT_EQ( r.dnf.length(), 0u );
}

TEST( Minimize, MatchesExhaustiveOracle )
{
  std::mt19937_64 rng( 3 );
  for ( int it = 0; it < 60; ++it )
  {
    unsigned n = 2 + it % 4;
    std::size_t k = 1 + rng() % ( ( 1u << n ) - 1 );
    auto m = oracle::random_matrix( n, k, rng );
    auto len = shortest_dnf( m, SolveMode::exact );
    auto rk = minimal_dnf( m, SolveMode::exact );
    // The oracle covers with every implicant, so equality also shows primes suffice.
    ASSERT_EQ( double( len.value ), oracle::min_dnf( m, false ) ) << it;
    ASSERT_EQ( double( rk.value ), oracle::min_dnf( m, true ) ) << it;
    EXPECT_TRUE( verify_dnf( m, len.dnf ).ok() );
    EXPECT_TRUE( verify_dnf( m, rk.dnf ).ok() );
    EXPECT_EQ( rk.value, rk.dnf.rank() );
  }
}

TEST( Minimize, GreedyAboveExactAboveBounds )
{
  std::mt19937_64 rng( 5 );
  for ( int it = 0; it < 40; ++it )
  {
    auto m = oracle::random_matrix( 5 + it % 4, 2 + it % 6, rng );
    auto ex = shortest_dnf( m, SolveMode::exact );
    auto gr = shortest_dnf( m, SolveMode::greedy );
    EXPECT_GE( gr.value, ex.value );
    EXPECT_LE( ex.certificate.near_zero_bound, ex.value );
    EXPECT_LE( gr.certificate.near_zero_bound, gr.value );
    EXPECT_LE( ex.certificate.lp_bound, Rational( ex.value ) );
    EXPECT_FALSE( gr.certificate.optimal );
    EXPECT_TRUE( verify_dnf( m, gr.dnf ).ok() );
  }
}

TEST( Minimize, FallbackIsFlagged )
{
  std::mt19937_64 rng( 7 );
  auto m = oracle::random_matrix( 10, 6, rng );
  MinimizationLimits lim;
  lim.cover.max_nodes = 1;
  auto r = shortest_dnf( m, SolveMode::exact, lim );
  if ( r.certificate.fell_back )
  {
    EXPECT_FALSE( r.certificate.optimal );
    EXPECT_EQ( r.mode, SolveMode::greedy );
  }
  EXPECT_TRUE( verify_dnf( m, r.dnf ).ok() );
}

TEST( Minimize, UniverseCapThrows )
{
  MinimizationLimits lim;
  lim.max_universe = 4;
  EXPECT_THROW( shortest_dnf( ZeroMatrix::from_strings( { "000" } ), SolveMode::exact, lim ), BudgetExceeded );
}

TEST( Verify, Examples )
{
  auto m = ZeroMatrix::from_strings( { "000" } );
  EXPECT_TRUE( verify_dnf( m, dnf( 3, { "1--", "-1-", "--1" } ) ).ok() );

  auto missed = verify_dnf( m, dnf( 3, { "1--" } ) );
  EXPECT_EQ( missed.kind, VerifyResult::Kind::missed_one );
  ASSERT_TRUE( missed.missed );
  EXPECT_EQ( missed.missed->str(), "001" );
  EXPECT_FALSE( m.is_zero( *missed.missed ) );

  auto zero = verify_dnf( m, dnf( 3, { "0--" } ) );
  EXPECT_EQ( zero.kind, VerifyResult::Kind::covers_zero );
  EXPECT_EQ( zero.cube_index, 0u );
  EXPECT_EQ( zero.row_index, 0u );

  EXPECT_THROW( verify_dnf( m, dnf( 2, { "1-" } ) ), std::invalid_argument );
}

TEST( Verify, SearchAgreesWithScan )
{
  std::mt19937_64 rng( 11 );
  for ( int it = 0; it < 200; ++it )
  {
    unsigned n = 3 + it % 8;
    auto m = oracle::random_matrix( n, 1 + it % 5, rng );
    auto primes = enumerate_primes( m ).primes;
    // Random subset of primes: sometimes a cover, often not.
    std::vector<Cube> pick;
    for ( auto const& p : primes )
      if ( rng() % 4 != 0 )
        pick.push_back( p );
    Dnf d( n, pick );
    auto a = verify_dnf( m, d );
    auto b = verify_dnf_by_search( m, d );
    ASSERT_EQ( a.kind, b.kind ) << it;
    if ( !a.ok() )
    {
      ASSERT_TRUE( b.missed );
      EXPECT_FALSE( d.evaluate( *b.missed ) );
      EXPECT_FALSE( m.is_zero( *b.missed ) );
    }
  }
}

TEST( Verify, WideFunctionUsesSearch )
{
  ZeroMatrix m( 20, { Point( 20, 0 ) } );
  std::vector<Cube> cs;
  for ( unsigned j = 0; j < 20; ++j )
    cs.push_back( Cube( 20 ).with_literal( j, true ) );
  EXPECT_TRUE( verify_dnf( m, Dnf( 20, cs ) ).ok() );
  cs.pop_back();
  auto r = verify_dnf( m, Dnf( 20, cs ) );
  ASSERT_EQ( r.kind, VerifyResult::Kind::missed_one );
  EXPECT_EQ( r.missed->bits(), 1u );
}
