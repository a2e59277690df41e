#include <nullcover/core.hpp>

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace nullcover;

TEST( BitVector, StringRoundTripAndCounts )
{
  auto v = BitVector::from_string( "0110" );
  EXPECT_EQ( v.size(), 4u );
  EXPECT_EQ( v.count(), 2u );
  EXPECT_TRUE( v.test( 1 ) );
  EXPECT_FALSE( v.test( 0 ) );
  EXPECT_EQ( v.to_string(), "0110" );
  EXPECT_EQ( ( ~v ).to_string(), "1001" );
  EXPECT_EQ( v.indices(), ( std::vector<std::size_t>{ 1, 2 } ) );
}

TEST( BitVector, WideVectorsKeepTailClean )
{
  BitVector v( 130 );
  auto full = ~v;
  EXPECT_EQ( full.count(), 130u );
  EXPECT_TRUE( full.all() );
  v.set( 129 );
  EXPECT_EQ( v.find_first(), 129u );
  EXPECT_TRUE( v.is_subset_of( full ) );
  EXPECT_FALSE( full.is_subset_of( v ) );
}

TEST( BitVector, MismatchedSizesThrow )
{
  BitVector a( 3 ), b( 4 );
  EXPECT_THROW( a |= b, std::invalid_argument );
}

TEST( VectorWeight, MinOfOnesAndZeros )
{
  EXPECT_EQ( vector_weight( BitVector::from_string( "0110" ) ), 2u );
  EXPECT_EQ( vector_weight( BitVector::from_string( "0000" ) ), 0u );
  EXPECT_EQ( vector_weight( BitVector::from_string( "111" ) ), 0u );
  EXPECT_THROW( vector_weight( BitVector() ), std::invalid_argument );
}

TEST( Point, Adjacency )
{
  auto p = []( const char* s ) { return Point::from_string( s ); };
  EXPECT_TRUE( adjacent( p( "000" ), p( "001" ) ) );
  EXPECT_FALSE( adjacent( p( "000" ), p( "000" ) ) );
  EXPECT_FALSE( adjacent( p( "000" ), p( "011" ) ) );
  EXPECT_THROW( adjacent( p( "000" ), p( "00" ) ), std::invalid_argument );
}

TEST( Point, BitOrderMatchesText )
{
  auto a = Point::from_string( "100" );
  EXPECT_EQ( a.bits(), 4u );
  EXPECT_TRUE( a[0] );
  EXPECT_FALSE( a[2] );
  EXPECT_EQ( a.flipped( 2 ).str(), "101" );
  EXPECT_LT( Point::from_string( "011" ), Point::from_string( "100" ) );
  EXPECT_THROW( Point::from_string( "01x" ), std::invalid_argument );
}

TEST( Cube, Containment )
{
  auto k = Cube::from_string( "1**" );
  EXPECT_TRUE( k.contains( Point::from_string( "101" ) ) );
  EXPECT_FALSE( k.contains( Point::from_string( "011" ) ) );
  Cube full( 3 );
  EXPECT_EQ( full.rank(), 0u );
  for ( std::uint64_t b = 0; b < 8; ++b )
    EXPECT_TRUE( full.contains( Point( 3, b ) ) );
  EXPECT_THROW( k.contains( Point::from_string( "01" ) ), std::invalid_argument );
  EXPECT_EQ( k.str(), "1--" );
  EXPECT_EQ( Cube::from_string( "1--" ), k );
}

TEST( Cube, PointsAndLiterals )
{
  auto k = Cube::from_string( "1-0" );
  EXPECT_EQ( k.rank(), 2u );
  EXPECT_EQ( k.rank_positive(), 1u );
  EXPECT_EQ( k.rank_negative(), 1u );
  auto pts = k.points();
  ASSERT_EQ( pts.size(), 2u );
  EXPECT_EQ( pts[0].str(), "100" );
  EXPECT_EQ( pts[1].str(), "110" );
  EXPECT_EQ( k.without_literal( 0 ).str(), "--0" );
  EXPECT_EQ( k.with_literal( 1, true ).str(), "110" );
  EXPECT_TRUE( Cube::from_string( "1--" ).contains( k ) );
}

TEST( ZeroMatrix, RejectsDuplicatesCitingRows )
{
  try
  {
    ZeroMatrix::from_strings( { "00", "01", "00" } );
    FAIL();
  }
  catch ( const std::invalid_argument& e )
  {
    std::string msg = e.what();
    EXPECT_NE( msg.find( "1" ), std::string::npos );
    EXPECT_NE( msg.find( "3" ), std::string::npos );
  }
}

TEST( ZeroMatrix, ColumnsAndCanonicalOrder )
{
  auto m = ZeroMatrix::from_strings( { "10", "00" } );
  EXPECT_EQ( m.k(), 2u );
  EXPECT_EQ( m.column( 0 ).to_string(), "10" );
  EXPECT_EQ( m.canonical().row( 0 ).str(), "00" );
  EXPECT_TRUE( m.is_zero( Point::from_string( "10" ) ) );
  EXPECT_FALSE( m.is_zero( Point::from_string( "11" ) ) );
  EXPECT_EQ( m.one_count(), 2u );
  EXPECT_THROW( m.column( 2 ), std::invalid_argument );
}

TEST( NormalizeReduced, FlipsHeavyColumns )
{
  // Second column is (1,1,0) over the rows.
  auto m = ZeroMatrix::from_strings( { "01", "11", "00" } );
  auto r = normalize_reduced( m );
  EXPECT_EQ( r.matrix.column( 1 ).to_string(), "001" );
  EXPECT_EQ( r.flip_mask.str(), "01" );

  auto already = ZeroMatrix::from_strings( { "0", "1" } );
  auto t = normalize_reduced( already );
  EXPECT_EQ( t.flip_mask.bits(), 0u );
  EXPECT_EQ( t.matrix, already );

  auto light = ZeroMatrix::from_strings( { "00", "01", "10" } );
  EXPECT_EQ( normalize_reduced( light ).flip_mask.bits(), 0u );
}

TEST( NormalizeReduced, ResultIsReducedOnRandomInputs )
{
  std::mt19937_64 rng( 11 );
  for ( int it = 0; it < 200; ++it )
  {
    auto m = oracle::random_matrix( 6, 1 + it % 20, rng );
    auto r = normalize_reduced( m );
    for ( unsigned j = 0; j < 6; ++j )
      EXPECT_LE( 2 * r.matrix.column( j ).count(), r.matrix.k() );
    EXPECT_EQ( r.matrix.flip_columns( r.flip_mask.bits() ), m );
  }
}

TEST( AdjacentZeros, Examples )
{
  EXPECT_TRUE( has_adjacent_zeros( ZeroMatrix::from_strings( { "000", "001" } ) ) );
  EXPECT_FALSE( has_adjacent_zeros( ZeroMatrix::from_strings( { "000", "111" } ) ) );
  EXPECT_FALSE( has_adjacent_zeros( ZeroMatrix::from_strings( { "000" } ) ) );
}

TEST( ColumnSets, OnesAndZerosPartitionRows )
{
  auto m = ZeroMatrix::from_strings( { "00", "10" } );
  auto c0 = column_sets( m, 0 );
  EXPECT_EQ( c0.ones.indices(), ( std::vector<std::size_t>{ 1 } ) );
  EXPECT_EQ( c0.zeros.indices(), ( std::vector<std::size_t>{ 0 } ) );
  auto c1 = column_sets( m, 1 );
  EXPECT_TRUE( c1.ones.none() );
  EXPECT_EQ( c1.zeros.count(), 2u );
  auto one = column_sets( ZeroMatrix::from_strings( { "11" } ), 0 );
  EXPECT_EQ( one.ones.count(), 1u );
  EXPECT_TRUE( one.zeros.none() );
  EXPECT_THROW( column_sets( m, 2 ), std::invalid_argument );
}

TEST( IndicatorVector, ChiIsLsbFirst )
{
  auto v = IndicatorVector::from_string( "1100" );
  EXPECT_EQ( v.chi(), 3u );
  EXPECT_EQ( IndicatorVector::from_chi( 4, 3 ), v );
  auto e2 = IndicatorVector::unit( 3, 2 );
  EXPECT_EQ( e2.str(), "010" );
  EXPECT_EQ( e2.chi(), 2u );
  EXPECT_TRUE( IndicatorVector::ones( 3 ).is_unity() );
  EXPECT_TRUE( v.first_coordinate() );
  for ( std::uint64_t x = 0; x < 16; ++x )
    EXPECT_EQ( IndicatorVector::from_chi( 4, x ).chi(), x );
}

TEST( Dnf, LengthRankEvaluate )
{
  Dnf d( 3, { Cube::from_string( "1--" ), Cube::from_string( "01-" ) } );
  EXPECT_EQ( d.length(), 2u );
  EXPECT_EQ( d.rank(), 3u );
  EXPECT_TRUE( d.evaluate( Point::from_string( "100" ) ) );
  EXPECT_TRUE( d.evaluate( Point::from_string( "011" ) ) );
  EXPECT_FALSE( d.evaluate( Point::from_string( "001" ) ) );
}
